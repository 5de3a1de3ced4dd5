"""The endomorphism PROP of a finite-dimensional rational space and operad algebras.

A :class:`MultilinearMap` ``V^{⊗n_in} -> V^{⊗n_out}`` is a dense numpy object
array of Fractions with axes ``(out_1, ..., out_{n_out}, in_1, ..., in_{n_in})``.
An :class:`Interpretation` assigns such a map to every generator; by the
universal property of free operads it extends to every tree, and a
presentation's relators all evaluating to zero certifies an algebra over the
presented operad.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, SchemaError, SignatureMismatch
from .free import OperadElement
from .linalg import ZERO, format_rational, to_rational
from .trees import Leaf, PlanarTree, Signature, check_perm, invert_perm


@dataclass(frozen=True)
class FinSpace:
    dim: int
    names: tuple = None

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch("a space needs dimension >= 1")
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.dim:
                raise DimensionMismatch(f"{len(self.names)} basis names for dimension {self.dim}")

    def name(self, i: int) -> str:
        return self.names[i] if self.names else f"e{i}"


def _frac_array(values, shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    flat = list(values)
    if len(flat) != arr.size:
        raise DimensionMismatch(f"{len(flat)} entries for shape {shape}")
    for j, v in enumerate(flat):
        arr.flat[j] = to_rational(v)
    return arr


class MultilinearMap:
    """Exact multilinear map V^{⊗n_in} -> V^{⊗n_out}, dim V = ``dim``."""

    __slots__ = ("n_in", "n_out", "dim", "entries")

    def __init__(self, n_in: int, n_out: int, dim: int, entries: np.ndarray):
        shape = (dim,) * (n_out + n_in)
        entries = np.asarray(entries, dtype=object)
        if entries.shape != shape:
            raise DimensionMismatch(f"entries of shape {entries.shape}, expected {shape}")
        self.n_in = n_in
        self.n_out = n_out
        self.dim = dim
        self.entries = entries

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, n_in: int, n_out: int) -> MultilinearMap:
        arr = np.empty((dim,) * (n_in + n_out), dtype=object)
        arr.fill(ZERO)
        return cls(n_in, n_out, dim, arr)

    @classmethod
    def identity(cls, dim: int) -> MultilinearMap:
        m = cls.zero(dim, 1, 1)
        for i in range(dim):
            m.entries[i, i] = Fraction(1)
        return m

    @classmethod
    def scalar(cls, dim: int, value) -> MultilinearMap:
        arr = np.empty((), dtype=object)
        arr[()] = to_rational(value)
        return cls(0, 0, dim, arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], dim: int, n_in: int, n_out: int) -> MultilinearMap:
        """Rows indexed by the flattened output multi-index, columns by the flattened input multi-index."""
        rows = list(rows)
        if len(rows) != dim ** n_out:
            raise DimensionMismatch(f"{len(rows)} rows, expected {dim ** n_out}")
        for r in rows:
            if len(r) != dim ** n_in:
                raise DimensionMismatch(f"row of length {len(r)}, expected {dim ** n_in}")
        return cls(n_in, n_out, dim, _frac_array((x for r in rows for x in r), (dim,) * (n_out + n_in)))

    @classmethod
    def from_function(cls, dim: int, n_in: int, n_out: int, fn) -> MultilinearMap:
        """Build from ``fn(out_index, in_index) -> rational``."""
        m = cls.zero(dim, n_in, n_out)
        for idx in itertools.product(range(dim), repeat=n_out + n_in):
            m.entries[idx] = to_rational(fn(idx[:n_out], idx[n_out:]))
        return m

    @classmethod
    def vector(cls, values: Sequence) -> MultilinearMap:
        """A vector as a map k -> V."""
        values = list(values)
        return cls(0, 1, len(values), _frac_array(values, (len(values),)))

    @classmethod
    def covector(cls, values: Sequence) -> MultilinearMap:
        """A covector as a map V -> k."""
        values = list(values)
        return cls(1, 0, len(values), _frac_array(values, (len(values),)))

    # -- structure ------------------------------------------------------------

    def to_rows(self) -> list[list[Fraction]]:
        flat = self.entries.reshape(self.dim ** self.n_out, self.dim ** self.n_in)
        return [list(r) for r in flat]

    def _check(self, other: MultilinearMap) -> None:
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim}")

    def then(self, other: MultilinearMap) -> MultilinearMap:
        """Vertical composition: apply self, then other."""
        self._check(other)
        if self.n_out != other.n_in:
            raise DimensionMismatch(f"{self.n_out} outputs fed into {other.n_in} inputs")
        k = self.n_out
        arr = np.tensordot(other.entries, self.entries,
                           axes=(list(range(other.n_out, other.n_out + k)), list(range(k))))
        return MultilinearMap(self.n_in, other.n_out, self.dim, np.asarray(arr, dtype=object))

    def tensor(self, other: MultilinearMap) -> MultilinearMap:
        """Horizontal composition: inputs and outputs concatenated."""
        self._check(other)
        outer = np.multiply.outer(self.entries, other.entries)
        a_out, a_in, b_out = self.n_out, self.n_in, other.n_out
        axes = (list(range(a_out))
                + list(range(a_out + a_in, a_out + a_in + b_out))
                + list(range(a_out, a_out + a_in))
                + list(range(a_out + a_in + b_out, outer.ndim)))
        return MultilinearMap(self.n_in + other.n_in, self.n_out + other.n_out, self.dim,
                              np.asarray(np.transpose(outer, axes), dtype=object))

    def permute_inputs(self, sigma: Sequence[int]) -> MultilinearMap:
        """Map ``x -> self(x_{sigma(1)}, ..., x_{sigma(n)})``."""
        sigma = check_perm(sigma, self.n_in)
        inv = invert_perm(sigma)
        axes = list(range(self.n_out)) + [self.n_out + s - 1 for s in inv]
        return MultilinearMap(self.n_in, self.n_out, self.dim, np.transpose(self.entries, axes))

    def permute_outputs(self, sigma: Sequence[int]) -> MultilinearMap:
        """Output factor j of the result is output factor sigma(j) of self."""
        sigma = check_perm(sigma, self.n_out)
        axes = [s - 1 for s in sigma] + list(range(self.n_out, self.n_out + self.n_in))
        return MultilinearMap(self.n_in, self.n_out, self.dim, np.transpose(self.entries, axes))

    def apply(self, *vectors) -> np.ndarray:
        """Evaluate on ``n_in`` vectors; returns the output tensor."""
        if len(vectors) != self.n_in:
            raise DimensionMismatch(f"{len(vectors)} arguments for {self.n_in} inputs")
        arr = self.entries
        for v in reversed(vectors):
            arr = np.tensordot(arr, np.asarray(v, dtype=object), axes=([arr.ndim - 1], [0]))
        return np.asarray(arr, dtype=object)

    def __add__(self, other: MultilinearMap) -> MultilinearMap:
        self._check(other)
        if (self.n_in, self.n_out) != (other.n_in, other.n_out):
            raise DimensionMismatch("adding maps of different types")
        return MultilinearMap(self.n_in, self.n_out, self.dim, self.entries + other.entries)

    def __sub__(self, other: MultilinearMap) -> MultilinearMap:
        return self + other * -1

    def __mul__(self, scalar) -> MultilinearMap:
        s = to_rational(scalar)
        return MultilinearMap(self.n_in, self.n_out, self.dim, self.entries * s)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, MultilinearMap) and (self.n_in, self.n_out, self.dim)
                == (other.n_in, other.n_out, other.dim) and bool(np.all(self.entries == other.entries)))

    __hash__ = None

    def nonzero_entries(self):
        for idx in np.ndindex(*self.entries.shape):
            v = self.entries[idx]
            if v != 0:
                yield idx[:self.n_out], idx[self.n_out:], Fraction(v)

    def first_nonzero(self):
        return next(self.nonzero_entries(), None)

    def is_zero(self) -> bool:
        return self.first_nonzero() is None

    def scalar_value(self) -> Fraction:
        if self.n_in or self.n_out:
            raise DimensionMismatch("not a scalar")
        return Fraction(self.entries[()])

    def __repr__(self):
        return f"MultilinearMap({self.n_in}->{self.n_out}, dim={self.dim})"


def end_compose(f: MultilinearMap, gs: Sequence[MultilinearMap]) -> MultilinearMap:
    """Operadic composite f o (g_1, ..., g_k) in End(V)."""
    if f.n_out != 1:
        raise DimensionMismatch("operadic composition needs a single-output outer map")
    if len(gs) != f.n_in:
        raise DimensionMismatch(f"{len(gs)} maps plugged into {f.n_in} inputs")
    arr = f.entries
    total_in = 0
    for g in gs:
        f._check(g)
        if g.n_out != 1:
            raise DimensionMismatch("operadic composition needs single-output inner maps")
        # axis 1 is always the next unfilled input of f; new inputs accumulate at the end
        arr = np.tensordot(arr, g.entries, axes=([1], [0]))
        total_in += g.n_in
    return MultilinearMap(total_in, 1, f.dim, np.asarray(arr, dtype=object))


@dataclass
class Interpretation:
    """Assignment of single-output multilinear maps to the generators of a signature."""

    space: FinSpace
    assignment: dict
    sig: Signature | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for name, m in self.assignment.items():
            if m.dim != self.space.dim:
                raise DimensionMismatch(f"generator {name}: dimension {m.dim} != {self.space.dim}")
            if m.n_out != 1:
                raise DimensionMismatch(f"generator {name} must have a single output")
        if self.sig is not None:
            self.check_signature(self.sig)

    def check_signature(self, sig: Signature) -> None:
        for g in sig.generators:
            m = self.assignment.get(g.name)
            if m is None:
                raise SignatureMismatch(f"generator {g.name} has no assigned map")
            if m.n_in != g.arity:
                raise SignatureMismatch(f"generator {g.name} has arity {g.arity}, map has {m.n_in} inputs")

    def map_for(self, name: str) -> MultilinearMap:
        try:
            return self.assignment[name]
        except KeyError:
            raise SignatureMismatch(f"generator {name} has no assigned map") from None


def _interpret_planar(node, rho: Interpretation) -> MultilinearMap:
    if isinstance(node, Leaf):
        return MultilinearMap.identity(rho.space.dim)
    f = rho.map_for(node.gen.name)
    if f.n_in != node.gen.arity:
        raise SignatureMismatch(f"generator {node.gen.name} has arity {node.gen.arity}, map has {f.n_in} inputs")
    return end_compose(f, [_interpret_planar(ch, rho) for ch in node.children])


def interpret(t: PlanarTree | OperadElement, rho: Interpretation) -> MultilinearMap:
    """Evaluate a tree (or a linear combination of trees) in End(V).

    Input slot l of the result feeds the leaf labeled l.
    """
    if isinstance(t, OperadElement):
        if rho.sig is not None and t.sig != rho.sig:
            raise SignatureMismatch("element and interpretation have different signatures")
        total = MultilinearMap.zero(rho.space.dim, t.arity, 1)
        for tree, c in t.terms.items():
            total = total + interpret(tree, rho) * c
        return total
    cached = rho._cache.get(t.key)
    if cached is not None:
        return cached
    planar = _interpret_planar(t.root, rho)
    labels = [lf.label for lf in t.leaves()]
    out = planar.permute_inputs(labels)
    rho._cache[t.key] = out
    return out


@dataclass
class RelatorCheck:
    index: int
    relator: str
    vanishes: bool
    witness: tuple | None = None  # (out multi-index, in multi-index, value)

    def to_json(self) -> dict:
        doc = {"index": self.index, "relator": self.relator, "vanishes": self.vanishes}
        if self.witness is not None:
            out, inp, val = self.witness
            doc["witness"] = {"out": list(out), "in": list(inp), "value": format_rational(val)}
        return doc


@dataclass
class AlgebraReport:
    passed: bool
    checks: list

    def to_json(self) -> dict:
        return {"passed": self.passed, "relators": [c.to_json() for c in self.checks]}


def check_algebra(p, rho: Interpretation) -> AlgebraReport:
    """Evaluate every relator of presentation ``p`` under ``rho``; pass iff all vanish."""
    rho.check_signature(p.sig)
    checks = []
    for j, r in enumerate(p.relators):
        val = interpret(r, rho)
        w = val.first_nonzero()
        checks.append(RelatorCheck(j, str(r), w is None, w))
    return AlgebraReport(all(c.vanishes for c in checks), checks)


# -- file format ----------------------------------------------------------------

def _load_doc(source) -> dict:
    if isinstance(source, Mapping):
        return dict(source)
    text = Path(source).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("<document>", f"invalid JSON: {exc}") from None


def map_from_json(doc: Mapping, dim: int, where: str, n_out: int = 1) -> MultilinearMap:
    if "arity" not in doc:
        raise SchemaError(f"{where}.arity", "missing")
    if "entries" not in doc:
        raise SchemaError(f"{where}.entries", "missing")
    arity = doc["arity"]
    if not isinstance(arity, int) or arity < 0:
        raise SchemaError(f"{where}.arity", "must be a non-negative integer")
    rows = doc["entries"]
    if not isinstance(rows, list) or len(rows) != dim ** n_out:
        raise SchemaError(f"{where}.entries", f"expected {dim ** n_out} rows")
    for j, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != dim ** arity:
            raise SchemaError(f"{where}.entries[{j}]", f"expected {dim ** arity} entries")
    try:
        return MultilinearMap.from_rows(rows, dim, arity, n_out)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}.entries", str(exc)) from None


def space_from_json(doc: Mapping) -> FinSpace:
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError("dim", "must be a positive integer")
    names = doc.get("basis")
    if names is not None and (not isinstance(names, list) or len(names) != dim):
        raise SchemaError("basis", f"must list {dim} names")
    return FinSpace(dim, tuple(names) if names else None)


def load_interpretation(source, sig: Signature | None = None) -> Interpretation:
    """Read ``{"dim": d, "generators": {"g": {"arity": 2, "entries": [[...], ...]}}}``."""
    doc = _load_doc(source)
    space = space_from_json(doc)
    gens = doc.get("generators")
    if not isinstance(gens, Mapping) or not gens:
        raise SchemaError("generators", "must be a non-empty object")
    assignment = {name: map_from_json(g, space.dim, f"generators.{name}") for name, g in gens.items()}
    rho = Interpretation(space, assignment)
    if sig is not None:
        rho.check_signature(sig)
        rho.sig = sig
    return rho


def map_to_json(m: MultilinearMap) -> dict:
    return {"arity": m.n_in, "entries": [[format_rational(x) for x in r] for r in m.to_rows()]}


def interpretation_to_json(rho: Interpretation) -> dict:
    doc = {"dim": rho.space.dim}
    if rho.space.names:
        doc["basis"] = list(rho.space.names)
    doc["generators"] = {name: map_to_json(m) for name, m in rho.assignment.items()}
    return doc


# -- stock structures -------------------------------------------------------------

def structure_constants(dim: int, table: Mapping[tuple, Mapping[int, object]]) -> MultilinearMap:
    """Bilinear map from ``{(i, j): {k: c}}`` meaning e_i * e_j = sum_k c e_k."""
    m = MultilinearMap.zero(dim, 2, 1)
    for (i, j), out in table.items():
        for k, c in out.items():
            m.entries[k, i, j] = to_rational(c)
    return m


def matrix_algebra(n: int) -> MultilinearMap:
    """Product of n x n matrices on the basis E_ab (index a*n + b)."""
    dim = n * n
    table = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        table[(a * n + b, b * n + c)] = {a * n + c: 1}
    return structure_constants(dim, table)


def sl2_bracket() -> MultilinearMap:
    """Commutator bracket with the cross-product structure constants [e_i, e_j] = eps_ijk e_k."""
    table = {}
    for i, j, k in itertools.permutations(range(3)):
        sign = 1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
        table[(i, j)] = {k: sign}
    return structure_constants(3, table)


def truncated_polynomials(n: int) -> MultilinearMap:
    """Product on Q[x]/(x^n) in the monomial basis 1, x, ..., x^{n-1}."""
    table = {}
    for i, j in itertools.product(range(n), repeat=2):
        if i + j < n:
            table[(i, j)] = {i + j: 1}
    return structure_constants(n, table)
