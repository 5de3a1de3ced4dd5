"""Linear combinations of trees and forests over the rationals.

:class:`OperadElement` lives in one arity component of the free operad on a
signature; :class:`PropElement` in one component P(m, n) of the free PROP.
Composition and tensor products are the multilinear extensions of the
tree/forest operations.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import ArityMismatch, BoundaryMismatch, ModeError, SchemaError, SignatureMismatch
from .expr import parse_combination
from .linalg import format_rational, to_rational
from .trees import (
    DEFAULT_COLOR,
    Forest,
    PlanarTree,
    Signature,
    act_perm,
    braiding_forest,
    compositions,
    corolla,
    forest_compose,
    forest_tensor,
    gamma,
    graft,
    identity,
    identity_forest,
    sort_trees,
)


def _clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if v != 0}


def _check_trees(sig: Signature, trees: Iterable[PlanarTree]) -> None:
    for t in trees:
        for g in t.generators():
            if g not in sig:
                raise SignatureMismatch(f"generator {g.name} is not in the signature")


class OperadElement:
    """Finite rational combination of trees of a fixed arity."""

    __slots__ = ("sig", "arity", "terms")

    def __init__(self, sig: Signature, arity: int, terms: Mapping[PlanarTree, Fraction] | None = None,
                 *, check: bool = True):
        self.sig = sig
        self.arity = arity
        terms = {t: to_rational(c) for t, c in (terms or {}).items()}
        if check:
            for t in terms:
                if t.arity != arity:
                    raise ArityMismatch(f"tree {t} of arity {t.arity} in an arity-{arity} element")
            _check_trees(sig, terms)
        self.terms = _clean(terms)

    @classmethod
    def basis(cls, sig: Signature, t: PlanarTree, coeff=1) -> OperadElement:
        return cls(sig, t.arity, {t: to_rational(coeff)})

    @classmethod
    def zero(cls, sig: Signature, arity: int) -> OperadElement:
        return cls(sig, arity, {}, check=False)

    @classmethod
    def unit(cls, sig: Signature, color: str = DEFAULT_COLOR) -> OperadElement:
        return cls(sig, 1, {identity(color): Fraction(1)}, check=False)

    @classmethod
    def parse(cls, text: str, sig: Signature) -> OperadElement:
        pairs = parse_combination(text, sig)
        if not pairs:
            raise SchemaError("expr", "empty combination")
        arity = pairs[0][1].arity
        terms: dict[PlanarTree, Fraction] = {}
        for c, t in pairs:
            if t.arity != arity:
                raise ArityMismatch(f"mixed arities {arity} and {t.arity} in {text!r}")
            terms[t] = terms.get(t, Fraction(0)) + c
        return cls(sig, arity, terms, check=False)

    def _same(self, other: OperadElement) -> None:
        if other.sig != self.sig:
            raise SignatureMismatch("elements over different signatures")
        if other.arity != self.arity:
            raise ArityMismatch(f"arities {self.arity} and {other.arity} differ")

    def __add__(self, other: OperadElement) -> OperadElement:
        self._same(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return OperadElement(self.sig, self.arity, out, check=False)

    def __neg__(self) -> OperadElement:
        return OperadElement(self.sig, self.arity, {t: -c for t, c in self.terms.items()}, check=False)

    def __sub__(self, other: OperadElement) -> OperadElement:
        return self + (-other)

    def __mul__(self, scalar) -> OperadElement:
        s = to_rational(scalar)
        return OperadElement(self.sig, self.arity, {t: s * c for t, c in self.terms.items()}, check=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, OperadElement) and self.sig == other.sig
                and self.arity == other.arity and self.terms == other.terms)

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, t: PlanarTree) -> Fraction:
        return self.terms.get(t, Fraction(0))

    def sorted_terms(self) -> list[tuple[PlanarTree, Fraction]]:
        return [(t, self.terms[t]) for t in sort_trees(self.terms)]

    def act(self, sigma: Sequence[int]) -> OperadElement:
        if not self.sig.is_symmetric:
            raise ModeError("permutation action requires a symmetric signature")
        return OperadElement(self.sig, self.arity,
                             {act_perm(t, sigma): c for t, c in self.terms.items()}, check=False)

    def graft(self, i: int, other: OperadElement) -> OperadElement:
        """Bilinear partial composition at slot ``i``."""
        if other.sig != self.sig:
            raise SignatureMismatch("elements over different signatures")
        out: dict[PlanarTree, Fraction] = {}
        for t, c in self.terms.items():
            for s, d in other.terms.items():
                r = graft(t, i, s)
                out[r] = out.get(r, 0) + c * d
        return OperadElement(self.sig, self.arity + other.arity - 1, out, check=False)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for t, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = t.key if a == 1 else f"{format_rational(a)}*{t.key}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"OperadElement(arity={self.arity}: {self})"

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [{"coeff": format_rational(c), "tree": t.key} for t, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, doc: Mapping, sig: Signature) -> OperadElement:
        from .expr import parse_tree

        if "arity" not in doc:
            raise SchemaError("arity", "missing")
        if not isinstance(doc.get("terms"), list):
            raise SchemaError("terms", "must be a list")
        terms: dict[PlanarTree, Fraction] = {}
        for j, item in enumerate(doc["terms"]):
            try:
                t = parse_tree(item["tree"], sig)
                c = to_rational(item["coeff"])
            except KeyError as exc:
                raise SchemaError(f"terms[{j}].{exc.args[0]}", "missing") from None
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise SchemaError(f"terms[{j}]", str(exc)) from None
            terms[t] = terms.get(t, Fraction(0)) + c
        return cls(sig, int(doc["arity"]), terms)


def dumps_element(e: OperadElement) -> str:
    return json.dumps(e.to_json(), sort_keys=True)


def lin_gamma(t: OperadElement, args: Sequence[OperadElement]) -> OperadElement:
    """Multilinear extension of tree composition."""
    if len(args) != t.arity:
        raise ArityMismatch(f"element of arity {t.arity} composed with {len(args)} arguments")
    for a in args:
        if a.sig != t.sig:
            raise SignatureMismatch("elements over different signatures")
    arity = sum(a.arity for a in args)
    out: dict[PlanarTree, Fraction] = {}
    if not t.terms or any(not a.terms for a in args):
        return OperadElement.zero(t.sig, arity)
    arg_items = [list(a.terms.items()) for a in args]
    for tree, c in t.terms.items():
        for combo in itertools.product(*arg_items):
            coeff = c
            for _, d in combo:
                coeff *= d
            r = gamma(tree, [s for s, _ in combo])
            out[r] = out.get(r, 0) + coeff
    return OperadElement(t.sig, arity, out, check=False)


class PropElement:
    """Finite rational combination of forests with ``n_in`` inputs and ``n_out`` outputs."""

    __slots__ = ("sig", "n_in", "n_out", "terms")

    def __init__(self, sig: Signature, n_in: int, n_out: int,
                 terms: Mapping[Forest, Fraction] | None = None, *, check: bool = True):
        self.sig = sig
        self.n_in = n_in
        self.n_out = n_out
        terms = {f: to_rational(c) for f, c in (terms or {}).items()}
        if check:
            for f in terms:
                if (f.n_in, f.n_out) != (n_in, n_out):
                    raise BoundaryMismatch(f"forest of type ({f.n_in},{f.n_out}) in a ({n_in},{n_out}) element")
                _check_trees(sig, f.trees)
        self.terms = _clean(terms)

    @classmethod
    def basis(cls, sig: Signature, f: Forest, coeff=1) -> PropElement:
        return cls(sig, f.n_in, f.n_out, {f: to_rational(coeff)})

    @classmethod
    def zero(cls, sig: Signature, n_in: int, n_out: int) -> PropElement:
        return cls(sig, n_in, n_out, {}, check=False)

    @classmethod
    def identity(cls, sig: Signature, n: int) -> PropElement:
        return cls.basis(sig, identity_forest(n))

    def __add__(self, other: PropElement) -> PropElement:
        if (other.n_in, other.n_out) != (self.n_in, self.n_out):
            raise BoundaryMismatch("adding elements of different types")
        out = dict(self.terms)
        for f, c in other.terms.items():
            out[f] = out.get(f, 0) + c
        return PropElement(self.sig, self.n_in, self.n_out, out, check=False)

    def __neg__(self) -> PropElement:
        return PropElement(self.sig, self.n_in, self.n_out, {f: -c for f, c in self.terms.items()}, check=False)

    def __sub__(self, other: PropElement) -> PropElement:
        return self + (-other)

    def __mul__(self, scalar) -> PropElement:
        s = to_rational(scalar)
        return PropElement(self.sig, self.n_in, self.n_out, {f: s * c for f, c in self.terms.items()}, check=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, PropElement) and self.sig == other.sig
                and (self.n_in, self.n_out) == (other.n_in, other.n_out) and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n_in, self.n_out, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        body = " + ".join(f"{format_rational(c)}*[{f.key}]" for f, c in sorted(self.terms.items(), key=lambda x: x[0].key))
        return f"PropElement(({self.n_in},{self.n_out}): {body or '0'})"


def lin_tensor(a: PropElement, b: PropElement) -> PropElement:
    if a.sig != b.sig:
        raise SignatureMismatch("elements over different signatures")
    out: dict[Forest, Fraction] = {}
    for f, c in a.terms.items():
        for g, d in b.terms.items():
            r = forest_tensor(f, g)
            out[r] = out.get(r, 0) + c * d
    return PropElement(a.sig, a.n_in + b.n_in, a.n_out + b.n_out, out, check=False)


def lin_compose(a: PropElement, b: PropElement) -> PropElement:
    """First ``a`` of type (m, n), then ``b`` of type (n, k)."""
    if a.sig != b.sig:
        raise SignatureMismatch("elements over different signatures")
    if a.n_out != b.n_in:
        raise BoundaryMismatch(f"{a.n_out} outputs composed with {b.n_in} inputs")
    out: dict[Forest, Fraction] = {}
    for f, c in a.terms.items():
        for g, d in b.terms.items():
            r = forest_compose(f, g)
            out[r] = out.get(r, 0) + c * d
    return PropElement(a.sig, a.n_in, b.n_out, out, check=False)


def braiding(sig: Signature, m: int, n: int) -> PropElement:
    """The symmetry sigma_{m,n} in P(m+n, n+m)."""
    if not sig.is_symmetric:
        raise ModeError("braidings exist only in symmetric mode")
    return PropElement.basis(sig, braiding_forest(m, n))


def prop_component_basis(operad_basis: Mapping[int, Sequence[PlanarTree]] | Callable[[int], Sequence[PlanarTree]],
                         m: int, l: int) -> list[Forest]:
    """Basis of P(m, l) for the PROP generated by an operad.

    One forest per composition (m_1, ..., m_l) of m and choice of basis trees
    t_i in O(m_i); compositions in lexicographic order.
    """
    if l < 1 or m < l:
        return []
    lookup = operad_basis if callable(operad_basis) else (lambda k: operad_basis.get(k, ()))
    out = []
    for comp in compositions(m, l):
        choices = [list(lookup(k)) for k in comp]
        for trees in itertools.product(*choices):
            out.append(Forest(trees))
    return out


class GeneratedProp:
    """The PROP generated by an operad given by its per-arity basis."""

    def __init__(self, operad_basis: Mapping[int, Sequence[PlanarTree]] | Callable[[int], Sequence[PlanarTree]]):
        self.operad_basis = operad_basis

    def component(self, m: int, l: int) -> list[Forest]:
        return prop_component_basis(self.operad_basis, m, l)


def underlying_operad(prop, n: int) -> list[PlanarTree]:
    """O(n) = P(n, 1): the single-output part of ``prop``."""
    return [f.trees[0] for f in prop.component(n, 1) if f.n_out == 1]


def free_operad_basis(sig: Signature) -> Callable[[int], list[PlanarTree]]:
    from .trees import enumerate_trees

    cache: dict[int, list[PlanarTree]] = {}

    def basis(n: int) -> list[PlanarTree]:
        if n not in cache:
            cache[n] = enumerate_trees(sig, n)
        return cache[n]

    return basis


def generator_element(sig: Signature, name: str) -> OperadElement:
    return OperadElement.basis(sig, corolla(sig.generator(name)))
