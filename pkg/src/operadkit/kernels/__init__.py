"""Exact elimination kernels with a compiled core and a pure-Python fallback.

The compiled extension ``_ckernels`` is used when it was built and imports
cleanly; otherwise ``_pykernels`` is used. Set ``OPERADKIT_PURE_PYTHON=1`` to
force the fallback. ``BACKEND`` names the active implementation.
"""

import os

from . import _pykernels

_FORCE_PURE = os.environ.get("OPERADKIT_PURE_PYTHON", "") not in ("", "0")

try:
    if _FORCE_PURE:
        raise ImportError("pure-python backend forced")
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

echelon_insert = _impl.echelon_insert
reduce_full = _impl.reduce_full
rref_int = _impl.rref_int


def available_backends():
    """Map of backend name -> kernel module, for tests and benchmarks."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out


def use_backend(name):
    """Switch the active kernels at runtime; returns the previous backend name."""
    global BACKEND, _impl, echelon_insert, reduce_full, rref_int
    mods = available_backends()
    if name not in mods:
        raise ValueError(f"backend {name!r} is not available (have {sorted(mods)})")
    prev = BACKEND
    _impl = mods[name]
    BACKEND = name
    echelon_insert = _impl.echelon_insert
    reduce_full = _impl.reduce_full
    rref_int = _impl.rref_int
    return prev
