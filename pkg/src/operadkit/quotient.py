"""Operadic ideals generated by relators, arity by arity.

The arity-n component of the ideal generated by relators R in the free operad
is spanned by the placements

    u o_i ( r o (w_1, ..., w_k) )        r in R, u, w_j trees,

(one relator occurrence inside an otherwise arbitrary tree), together with
their images under the symmetric group in symmetric mode. Because every tree
with labeled leaves is a planar tree acted on by a permutation, it suffices to
place identity-labeled u and w_j and then close under S_n. The span is exact
and complete at each fixed arity; no rewriting system is involved.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import OperadError, SignatureMismatch
from .free import OperadElement, lin_gamma
from .linalg import Echelon, RatMatrix
from .trees import PlanarTree, Signature, act_perm, compositions, enumerate_trees, graft, planar_trees

DEFAULT_MAX_ARITY = 6


@dataclass(frozen=True)
class Presentation:
    sig: Signature
    relators: tuple
    name: str = ""
    fingerprint: str = field(default="", init=False, compare=False)

    def __post_init__(self):
        rels = tuple(self.relators)
        object.__setattr__(self, "relators", rels)
        for j, r in enumerate(rels):
            if r.sig != self.sig:
                raise SignatureMismatch(f"relator {j} is over a different signature")
            if r.is_zero():
                raise OperadError(f"relator {j} is zero")
            if len({t.color for t in r.terms}) != 1 or len({tuple(t.leaf_colors()) for t in r.terms}) != 1:
                raise OperadError(f"relator {j} mixes boundary colors")
        doc = {
            "mode": self.sig.mode.value,
            "generators": [[g.name, g.arity, list(g.in_colors), g.out_color] for g in self.sig.generators],
            "relators": [r.to_json() for r in rels],
        }
        digest = hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()
        object.__setattr__(self, "fingerprint", digest)

    def __hash__(self):
        return hash(self.fingerprint)

    @property
    def relator_arities(self) -> list[int]:
        return [r.arity for r in self.relators]


class IdealSlice:
    """Arity-n component of the ideal: the tree basis and an echelon basis of the ideal.

    Columns are indexed by ``basis_trees`` in canonical-key order (or its
    reverse when built with ``reverse=True``). ``span_vectors`` materializes
    the echelon rows densely.
    """

    def __init__(self, arity: int, basis_trees: Sequence[PlanarTree], echelon: Echelon, n_placements: int):
        self.arity = arity
        self.basis_trees = list(basis_trees)
        self.index = {t: j for j, t in enumerate(self.basis_trees)}
        self.echelon = echelon
        self.n_placements = n_placements
        self._dense = None

    @property
    def rank(self) -> int:
        return self.echelon.rank

    @property
    def dim(self) -> int:
        return len(self.basis_trees)

    @property
    def span_vectors(self) -> RatMatrix:
        if self._dense is None:
            self._dense = self.echelon.to_matrix()
        return self._dense

    def coordinates(self, e: OperadElement) -> dict[int, Fraction]:
        try:
            return {self.index[t]: c for t, c in e.terms.items()}
        except KeyError as exc:
            raise OperadError(f"tree {exc.args[0]} is not in the arity-{self.arity} basis") from None

    def element(self, sig: Signature, coords: dict[int, Fraction]) -> OperadElement:
        return OperadElement(sig, self.arity, {self.basis_trees[j]: c for j, c in coords.items()}, check=False)

    def rows(self, sig: Signature) -> list[OperadElement]:
        """The echelon basis of the ideal component as operad elements."""
        return [self.element(sig, r) for r in self.echelon.rows()]

    def normal_trees(self) -> list[PlanarTree]:
        """Trees whose columns carry no pivot: a basis of the quotient component."""
        return [t for j, t in enumerate(self.basis_trees) if j not in self.echelon.pivots]


def placements(p: Presentation, n: int) -> Iterator[dict[PlanarTree, Fraction]]:
    """Planar relator placements of total arity n (before symmetric closure)."""
    sig = p.sig
    for r in p.relators:
        k = r.arity
        if k > n:
            continue
        sample = next(iter(r.terms))
        r_out = sample.color
        r_in = sample.leaf_colors()
        for a in range(1, n - k + 2):
            slots = [(u, i) for u in planar_trees(sig, a)
                     for i, c in enumerate(u.leaf_colors(), start=1) if c == r_out]
            if not slots:
                continue
            for comp in compositions(n - a + 1, k):
                choices = [planar_trees(sig, comp[j], r_in[j]) for j in range(k)]
                for ws in itertools.product(*choices):
                    inner = lin_gamma(r, [OperadElement.basis(sig, w) for w in ws])
                    for u, i in slots:
                        out: dict[PlanarTree, Fraction] = {}
                        for t, c in inner.terms.items():
                            g = graft(u, i, t)
                            out[g] = out.get(g, 0) + c
                        yield out


_CACHE: dict[tuple, IdealSlice] = {}
_CACHE_LOCK = threading.Lock()


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


def ideal_slice(p: Presentation, n: int, *, max_arity: int = DEFAULT_MAX_ARITY,
                reverse: bool = False) -> IdealSlice:
    """Spanning data for the arity-n component of the ideal generated by ``p.relators``."""
    if n < 1:
        raise OperadError("arity must be >= 1")
    if n > max_arity:
        raise OperadError(f"arity {n} exceeds the configured maximum {max_arity}")
    key = (p.fingerprint, n, reverse)
    cached = _CACHE.get(key)
    if cached is not None:
        return cached
    basis = enumerate_trees(p.sig, n)
    if reverse:
        basis = basis[::-1]
    index = {t: j for j, t in enumerate(basis)}
    ech = Echelon(len(basis))
    perms = list(itertools.permutations(range(1, n + 1))) if p.sig.is_symmetric else [None]
    count = 0
    for elem in placements(p, n):
        for sigma in perms:
            if sigma is None:
                row = {index[t]: c for t, c in elem.items() if c}
            else:
                row = {index[act_perm(t, sigma)]: c for t, c in elem.items() if c}
            count += 1
            ech.add(row)
            if ech.rank == len(basis):
                break
        if ech.rank == len(basis):
            break
    sl = IdealSlice(n, basis, ech, count)
    with _CACHE_LOCK:
        _CACHE.setdefault(key, sl)
    return _CACHE[key]


def _check_sig(e: OperadElement, p: Presentation) -> None:
    if e.sig != p.sig:
        raise SignatureMismatch("element and presentation have different signatures")


def is_member(e: OperadElement, p: Presentation, **kw) -> bool:
    _check_sig(e, p)
    if e.is_zero():
        return True
    sl = ideal_slice(p, e.arity, **kw)
    return sl.echelon.contains(sl.coordinates(e))


def quotient_dim(p: Presentation, n: int, **kw) -> int:
    sl = ideal_slice(p, n, **kw)
    return sl.dim - sl.rank


def normal_form(e: OperadElement, p: Presentation, **kw) -> OperadElement:
    """Coset representative of ``e``: zero on every pivot tree of the ideal's echelon basis."""
    _check_sig(e, p)
    if e.is_zero():
        return e
    sl = ideal_slice(p, e.arity, **kw)
    return sl.element(p.sig, sl.echelon.reduce(sl.coordinates(e)))
