"""Commutative Frobenius algebras and the (1+1)-dimensional TQFTs they define.

Cobordisms are words in six elementary pieces, read top to bottom::

    cup      0 -> 1     disk (creates a circle)
    cap      1 -> 0     disk (caps a circle)
    pants    2 -> 1     multiplication
    copants  1 -> 2     comultiplication
    id       1 -> 1     cylinder
    swap     2 -> 2     crossing cylinders

A word is classified by its connected components, each determined up to
diffeomorphism by (genus, incoming circles, outgoing circles). Genus comes
from the Euler characteristic: cups and caps contribute +1, pants and copants
-1, and g = (2 - chi - b) / 2 for a component with b boundary circles.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence


from .errors import DimensionMismatch, FrobeniusAxiomFailure, IllTypedWord, RequiresPairing, SchemaError
from .linalg import RatMatrix, inverse, rank, to_rational
from .representation import FinSpace, MultilinearMap, _load_doc, map_from_json, space_from_json


class Piece(enum.Enum):
    CUP = ("cup", 0, 1)
    CAP = ("cap", 1, 0)
    PANTS = ("pants", 2, 1)
    COPANTS = ("copants", 1, 2)
    ID = ("id", 1, 1)
    SWAP = ("swap", 2, 2)

    def __init__(self, text, n_in, n_out):
        self.text = text
        self.n_in = n_in
        self.n_out = n_out

    @property
    def euler(self) -> int:
        return {"cup": 1, "cap": 1, "pants": -1, "copants": -1}.get(self.text, 0)

    @classmethod
    def parse(cls, text: str) -> Piece:
        t = text.strip().lower()
        for p in cls:
            if p.text == t:
                return p
        raise IllTypedWord(f"unknown piece {text!r}")


@dataclass(frozen=True)
class CobordismWord:
    layers: tuple

    def __post_init__(self):
        layers = tuple(tuple(layer) for layer in self.layers)
        object.__setattr__(self, "layers", layers)
        if not layers:
            raise IllTypedWord("a word needs at least one layer")
        for j in range(1, len(layers)):
            out_prev = sum(p.n_out for p in layers[j - 1])
            in_next = sum(p.n_in for p in layers[j])
            if out_prev != in_next:
                raise IllTypedWord(f"layer {j} has {out_prev} outgoing circles, layer {j + 1} expects {in_next}")

    @property
    def n_in(self) -> int:
        return sum(p.n_in for p in self.layers[0])

    @property
    def n_out(self) -> int:
        return sum(p.n_out for p in self.layers[-1])

    @classmethod
    def parse(cls, text: str) -> CobordismWord:
        layers = []
        for chunk in text.split(";"):
            names = [x for x in chunk.split(",") if x.strip()]
            if not names:
                raise IllTypedWord(f"empty layer in {text!r}")
            layers.append(tuple(Piece.parse(x) for x in names))
        return cls(tuple(layers))

    def then(self, other: CobordismWord) -> CobordismWord:
        return CobordismWord(self.layers + other.layers)

    def __str__(self):
        return "; ".join(", ".join(p.text for p in layer) for layer in self.layers)


@dataclass(frozen=True, order=True)
class Component:
    inputs: tuple   # global input circles (1-based), increasing
    outputs: tuple  # global output circles (1-based), increasing
    genus: int

    @property
    def in_circles(self) -> int:
        return len(self.inputs)

    @property
    def out_circles(self) -> int:
        return len(self.outputs)


@dataclass(frozen=True)
class CobordismNormalForm:
    n_in: int
    n_out: int
    components: tuple   # Component, sorted
    closed: tuple       # genera of closed components, sorted

    def to_json(self) -> dict:
        return {
            "inputs": self.n_in,
            "outputs": self.n_out,
            "components": [{"genus": c.genus, "in": list(c.inputs), "out": list(c.outputs)} for c in self.components],
            "closed": list(self.closed),
        }


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def normalize_cobordism(w: CobordismWord) -> CobordismNormalForm:
    uf = _UnionFind()
    wires = []
    for i in range(w.n_in):
        uf.add(("in", i))
        wires.append(("in", i))
    euler_of = {}
    for li, layer in enumerate(w.layers):
        new_wires = []
        pos = 0
        for pi, piece in enumerate(layer):
            taken = wires[pos:pos + piece.n_in]
            pos += piece.n_in
            if piece is Piece.ID:
                new_wires.extend(taken)
            elif piece is Piece.SWAP:
                new_wires.extend(taken[::-1])
            else:
                node = ("piece", li, pi)
                uf.add(node)
                euler_of[node] = piece.euler
                for t in taken:
                    uf.union(node, t)
                new_wires.extend([node] * piece.n_out)
        wires = new_wires
    groups: dict = {}
    for x in uf.parent:
        groups.setdefault(uf.find(x), {"chi": 0, "in": [], "out": []})
    for node, e in euler_of.items():
        groups[uf.find(node)]["chi"] += e
    for i in range(w.n_in):
        groups[uf.find(("in", i))]["in"].append(i + 1)
    for j, owner in enumerate(wires):
        groups[uf.find(owner)]["out"].append(j + 1)
    comps, closed = [], []
    for data in groups.values():
        b = len(data["in"]) + len(data["out"])
        twice_g = 2 - data["chi"] - b
        if twice_g < 0 or twice_g % 2:
            raise IllTypedWord(f"inconsistent Euler characteristic {data['chi']} with {b} boundary circles")
        if b == 0:
            closed.append(twice_g // 2)
        else:
            comps.append(Component(tuple(sorted(data["in"])), tuple(sorted(data["out"])), twice_g // 2))
    return CobordismNormalForm(w.n_in, w.n_out, tuple(sorted(comps)), tuple(sorted(closed)))


# -- Frobenius data -----------------------------------------------------------

@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    witness: tuple | None = None

    def to_json(self) -> dict:
        doc = {"axiom": self.axiom, "passed": self.passed}
        if self.witness is not None:
            doc["witness"] = [str(x) if isinstance(x, Fraction) else x for x in self.witness]
        return doc


@dataclass
class FrobeniusReport:
    passed: bool
    axioms: list

    def to_json(self) -> dict:
        return {"passed": self.passed, "axioms": [a.to_json() for a in self.axioms]}


class FrobeniusData:
    """Multiplication, unit and counit on a finite-dimensional rational space.

    Pairing, copairing, comultiplication and the handle operator are derived
    on first use.
    """

    def __init__(self, space: FinSpace, mult: MultilinearMap, unit: Sequence, counit: Sequence):
        if mult.n_in != 2 or mult.n_out != 1 or mult.dim != space.dim:
            raise DimensionMismatch("multiplication must be a 2 -> 1 map on the space")
        if len(unit) != space.dim or len(counit) != space.dim:
            raise DimensionMismatch("unit and counit must have length dim")
        self.space = space
        self.dim = space.dim
        self.mult = mult
        self.unit = MultilinearMap.vector([to_rational(x) for x in unit])
        self.counit = MultilinearMap.covector([to_rational(x) for x in counit])

    @cached_property
    def pairing(self) -> RatMatrix:
        pair = self.mult.then(self.counit)
        return RatMatrix.from_rows([[pair.entries[a, b] for b in range(self.dim)] for a in range(self.dim)])

    @cached_property
    def report(self) -> FrobeniusReport:
        return check_frobenius(self)

    def require_valid(self) -> None:
        if not self.report.passed:
            failed = [a.axiom for a in self.report.axioms if not a.passed]
            raise FrobeniusAxiomFailure(f"Frobenius axioms fail: {', '.join(failed)}")

    @cached_property
    def copairing(self) -> MultilinearMap:
        """Element of V⊗V dual to the pairing (a 0 -> 2 map)."""
        inv = inverse(self.pairing)
        m = MultilinearMap.zero(self.dim, 0, 2)
        for a, b in itertools.product(range(self.dim), repeat=2):
            m.entries[a, b] = inv[a, b]
        return m

    @cached_property
    def comult(self) -> MultilinearMap:
        """x -> (m ⊗ id)(x ⊗ copairing)."""
        ident = MultilinearMap.identity(self.dim)
        return ident.tensor(self.copairing).then(self.mult.tensor(ident))

    @cached_property
    def handle(self) -> MultilinearMap:
        return self.comult.then(self.mult)

    @cached_property
    def swap(self) -> MultilinearMap:
        return MultilinearMap.identity(self.dim).tensor(MultilinearMap.identity(self.dim)).permute_outputs((2, 1))

    def piece_map(self, piece: Piece) -> MultilinearMap:
        return {
            Piece.CUP: self.unit,
            Piece.CAP: self.counit,
            Piece.PANTS: self.mult,
            Piece.COPANTS: self.comult,
            Piece.ID: MultilinearMap.identity(self.dim),
            Piece.SWAP: self.swap,
        }[piece]


def _first_difference(a: MultilinearMap, b: MultilinearMap):
    return (a - b).first_nonzero()


def check_frobenius(d: FrobeniusData) -> FrobeniusReport:
    """Check associativity, commutativity, unit, pairing symmetry, invariance and nondegeneracy."""
    n = d.dim
    ident = MultilinearMap.identity(n)
    m = d.mult
    results = []

    left = m.tensor(ident).then(m)
    right = ident.tensor(m).then(m)
    w = _first_difference(left, right)
    results.append(AxiomResult("associativity", w is None, None if w is None else w[1]))

    w = _first_difference(m, m.permute_inputs((2, 1)))
    results.append(AxiomResult("commutativity", w is None, None if w is None else w[1]))

    lu = d.unit.tensor(ident).then(m)
    ru = ident.tensor(d.unit).then(m)
    w = _first_difference(lu, ident) or _first_difference(ru, ident)
    results.append(AxiomResult("unit", w is None, None if w is None else w[1]))

    P = d.pairing
    asym = next(((a, b) for a in range(n) for b in range(n) if P[a, b] != P[b, a]), None)
    results.append(AxiomResult("pairing_symmetry", asym is None, asym))

    inv_l = left.then(d.counit)
    inv_r = right.then(d.counit)
    w = _first_difference(inv_l, inv_r)
    results.append(AxiomResult("invariance", w is None, None if w is None else w[1]))

    r = rank(P)
    results.append(AxiomResult("nondegeneracy", r == n, None if r == n else ("rank", r)))
    return FrobeniusReport(all(x.passed for x in results), results)


# -- evaluation -----------------------------------------------------------------

def _mult_tree(d, k: int) -> MultilinearMap:
    """Left-nested product V^{⊗k} -> V (unit for k = 0)."""
    if k == 0:
        return d.unit
    ident = MultilinearMap.identity(d.dim)
    out = ident
    for j in range(1, k):
        out = out.tensor(ident).then(d.mult)
    return out


def _comult_tree(d: FrobeniusData, k: int) -> MultilinearMap:
    """V -> V^{⊗k} by iterated comultiplication on the first factor (counit for k = 0)."""
    if k == 0:
        return d.counit
    ident = MultilinearMap.identity(d.dim)
    out = ident
    rest = None
    for _ in range(1, k):
        step = d.comult if rest is None else d.comult.tensor(rest)
        out = out.then(step)
        rest = ident if rest is None else rest.tensor(ident)
    return out


def _route(nf: CobordismNormalForm, dim: int, pieces: list[tuple[Component, MultilinearMap]],
           scalar: Fraction) -> MultilinearMap:
    """Tensor component maps and permute factors into global circle order."""
    total = MultilinearMap.scalar(dim, scalar)
    ins: list[int] = []
    outs: list[int] = []
    for comp, mp in pieces:
        total = total.tensor(mp)
        ins.extend(comp.inputs)
        outs.extend(comp.outputs)
    # input factor j of `total` reads global circle ins[j]
    if ins:
        total = total.permute_inputs(tuple(ins))
    if outs:
        total = total.permute_outputs(tuple(outs.index(c) + 1 for c in range(1, nf.n_out + 1)))
    return total


def evaluate(nf: CobordismNormalForm | CobordismWord, d: FrobeniusData) -> MultilinearMap:
    """TQFT value of a normal form (a word is normalized first)."""
    if isinstance(nf, CobordismWord):
        nf = normalize_cobordism(nf)
    d.require_valid()
    scalar = Fraction(1)
    for g in nf.closed:
        h = d.unit
        for _ in range(g):
            h = h.then(d.handle)
        scalar *= h.then(d.counit).scalar_value()
    pieces = []
    for comp in nf.components:
        mp = _mult_tree(d, comp.in_circles)
        for _ in range(comp.genus):
            mp = mp.then(d.handle)
        mp = mp.then(_comult_tree(d, comp.out_circles))
        pieces.append((comp, mp))
    return _route(nf, d.dim, pieces, scalar)


def evaluate_word(w: CobordismWord, d: FrobeniusData) -> MultilinearMap:
    """TQFT value computed layer by layer, without normalizing."""
    d.require_valid()
    total = None
    for layer in w.layers:
        layer_map = MultilinearMap.scalar(d.dim, 1)
        for piece in layer:
            layer_map = layer_map.tensor(d.piece_map(piece))
        total = layer_map if total is None else total.then(layer_map)
    return total


def closed_surface(genus: int) -> CobordismWord:
    """cup; (copants; pants)^g; cap."""
    layers = [(Piece.CUP,)]
    for _ in range(genus):
        layers += [(Piece.COPANTS,), (Piece.PANTS,)]
    layers.append((Piece.CAP,))
    return CobordismWord(tuple(layers))


def closed_invariant(genus: int, d: FrobeniusData) -> Fraction:
    return evaluate(closed_surface(genus), d).scalar_value()


@dataclass
class CommutativeAlgebra:
    """Multiplication and unit only: enough for genus-zero, single-output surfaces."""

    mult: MultilinearMap
    unit: MultilinearMap

    @property
    def dim(self) -> int:
        return self.mult.dim

    @classmethod
    def from_frobenius(cls, d: FrobeniusData) -> CommutativeAlgebra:
        return cls(d.mult, d.unit)


def genus_zero_evaluate(nf: CobordismNormalForm | CobordismWord, a: CommutativeAlgebra) -> MultilinearMap:
    """Tree-level evaluation using only multiplication and unit."""
    if isinstance(nf, CobordismWord):
        nf = normalize_cobordism(nf)
    if nf.closed:
        raise RequiresPairing("closed components need a counit")
    for comp in nf.components:
        if comp.genus > 0:
            raise RequiresPairing(f"component of genus {comp.genus} needs the pairing")
        if comp.out_circles != 1:
            raise RequiresPairing(f"component with {comp.out_circles} outgoing circles needs the pairing")
    pieces = [(comp, _mult_tree(a, comp.in_circles)) for comp in nf.components]
    return _route(nf, a.dim, pieces, Fraction(1))


def random_word(rng: random.Random, n_in: int, layers: int, max_width: int = 3) -> CobordismWord:
    """Random well-typed word starting from ``n_in`` circles."""
    out = []
    width = n_in
    for _ in range(layers):
        layer = []
        remaining = width
        while True:
            options = []
            if remaining >= 1:
                options += [Piece.ID, Piece.PANTS if remaining >= 2 else Piece.ID, Piece.COPANTS, Piece.CAP]
            if remaining >= 2:
                options.append(Piece.SWAP)
            if remaining == 0:
                if layer:
                    break
                options = [Piece.CUP]
            elif rng.random() < 0.15:
                options.append(Piece.CUP)
            p = rng.choice(options)
            new_width = sum(x.n_out for x in layer) + p.n_out + remaining - p.n_in
            if new_width > max_width:
                p = Piece.ID if remaining >= 1 else Piece.CUP
            layer.append(p)
            remaining -= p.n_in
        width = sum(p.n_out for p in layer)
        out.append(tuple(layer))
    return CobordismWord(tuple(out))


# -- file format ----------------------------------------------------------------

def load_frobenius(source) -> FrobeniusData:
    """Interpretation-style JSON with a single binary generator plus ``unit`` and ``counit``."""
    doc = _load_doc(source)
    space = space_from_json(doc)
    gens = doc.get("generators")
    if not isinstance(gens, dict) or not gens:
        raise SchemaError("generators", "must be a non-empty object")
    binary = [name for name, g in gens.items() if isinstance(g, dict) and g.get("arity") == 2]
    if len(binary) != 1:
        raise SchemaError("generators", "exactly one generator of arity 2 (the multiplication) is required")
    mult = map_from_json(gens[binary[0]], space.dim, f"generators.{binary[0]}")
    vecs = {}
    for key in ("unit", "counit"):
        v = doc.get(key)
        if not isinstance(v, list) or len(v) != space.dim:
            raise SchemaError(key, f"must be a list of {space.dim} rationals")
        try:
            vecs[key] = [to_rational(x) for x in v]
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise SchemaError(key, str(exc)) from None
    return FrobeniusData(space, mult, vecs["unit"], vecs["counit"])
