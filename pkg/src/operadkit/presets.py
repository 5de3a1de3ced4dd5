"""Ready-made presentations of the classical operads.

Relators are written in the tree syntax; the shorthand ``(12)3`` stands for
``g(g(1,2),3)``, ``1(23)`` for ``g(1,g(2,3))`` and ``2(13)`` for
``g(2,g(1,3))``, with ``g`` the binary generator of the operad.

=============  ===========  ==========================================================
name           mode         relators
=============  ===========  ==========================================================
assoc-planar   planar       g(g(1,2),3) - g(1,g(2,3))
assoc          symmetric    g(g(1,2),3) - g(1,g(2,3))
comm           symmetric    assoc + g(1,2) - g(2,1)
lie            symmetric    b(1,2) + b(2,1);  b(b(1,2),3) - b(1,b(2,3)) + b(2,b(1,3))
poisson        symmetric    m assoc, m comm, b antisym, b Jacobi,
                            m(b(1,2),3) - b(1,m(2,3)) + m(2,b(1,3))
=============  ===========  ==========================================================
"""

from __future__ import annotations

import enum

from .free import OperadElement
from .quotient import Presentation
from .trees import Mode, Signature


class PresetName(enum.Enum):
    ASSOC_PLANAR = "assoc-planar"
    ASSOC_SYM = "assoc"
    COMM = "comm"
    LIE = "lie"
    POISSON = "poisson"


ASSOC = "g(g(1,2),3) - g(1,g(2,3))"
COMMUTATIVITY = "g(1,2) - g(2,1)"
ANTISYMMETRY = "b(1,2) + b(2,1)"
JACOBI = "b(b(1,2),3) - b(1,b(2,3)) + b(2,b(1,3))"
LEIBNIZ = "m(b(1,2),3) - b(1,m(2,3)) + m(2,b(1,3))"

_SPECS = {
    PresetName.ASSOC_PLANAR: ({"g": 2}, Mode.PLANAR, [ASSOC]),
    PresetName.ASSOC_SYM: ({"g": 2}, Mode.SYMMETRIC, [ASSOC]),
    PresetName.COMM: ({"g": 2}, Mode.SYMMETRIC, [ASSOC, COMMUTATIVITY]),
    PresetName.LIE: ({"b": 2}, Mode.SYMMETRIC, [ANTISYMMETRY, JACOBI]),
    PresetName.POISSON: (
        {"m": 2, "b": 2},
        Mode.SYMMETRIC,
        [
            ASSOC.replace("g", "m"),
            COMMUTATIVITY.replace("g", "m"),
            ANTISYMMETRY,
            JACOBI,
            LEIBNIZ,
        ],
    ),
}

_CACHE: dict[PresetName, Presentation] = {}


def preset(name: PresetName | str) -> Presentation:
    name = PresetName(name)
    if name not in _CACHE:
        arities, mode, rels = _SPECS[name]
        sig = Signature.monochrome(arities, mode)
        _CACHE[name] = Presentation(sig, tuple(OperadElement.parse(r, sig) for r in rels), name.value)
    return _CACHE[name]


def preset_names() -> list[str]:
    return [p.value for p in PresetName]
