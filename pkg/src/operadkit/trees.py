"""Rooted trees and forests with generator-labeled vertices.

A tree of arity ``n`` has leaves labeled ``1..n`` (each once) and internal
vertices labeled by generators; the children of a vertex are ordered. These
are the basis elements of free operads. Forests are ordered sequences of trees
together with an assignment of global input positions to their leaves; they
are the morphisms of the free PROP.

Grafting uses block insertion: the leaves of the inserted tree occupy
consecutive labels starting at the slot that was replaced.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import (
    ArityMismatch,
    BoundaryMismatch,
    ColorMismatch,
    ModeError,
    OperadError,
    PositionOutOfRange,
)

DEFAULT_COLOR = "*"


class Mode(enum.Enum):
    PLANAR = "planar"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class Generator:
    name: str
    arity: int
    in_colors: tuple = None
    out_color: str = DEFAULT_COLOR

    def __post_init__(self):
        if not self.name.isidentifier():
            raise OperadError(f"generator name {self.name!r} is not an identifier")
        if self.arity < 1:
            raise OperadError(f"generator {self.name} must have arity >= 1")
        if self.in_colors is None:
            object.__setattr__(self, "in_colors", (self.out_color,) * self.arity)
        else:
            object.__setattr__(self, "in_colors", tuple(self.in_colors))
        if len(self.in_colors) != self.arity:
            raise OperadError(f"generator {self.name}: {self.arity} inputs but {len(self.in_colors)} colors")


@dataclass(frozen=True)
class Signature:
    generators: tuple
    mode: Mode = Mode.PLANAR
    colors: frozenset = None
    _by_name: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise OperadError(f"duplicate generator names in {names}")
        used = {g.out_color for g in gens} | {c for g in gens for c in g.in_colors}
        if self.colors is None:
            colors = frozenset(used) if used else frozenset({DEFAULT_COLOR})
        else:
            colors = frozenset(self.colors)
            missing = used - colors
            if missing:
                raise OperadError(f"colors {sorted(missing)} used by generators but not declared")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "_by_name", {g.name: g for g in gens})

    @classmethod
    def monochrome(cls, arities: dict[str, int], mode: Mode = Mode.PLANAR) -> Signature:
        return cls(tuple(Generator(n, a) for n, a in arities.items()), mode)

    def generator(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise OperadError(f"unknown generator {name!r}") from None

    def __contains__(self, g) -> bool:
        return self._by_name.get(getattr(g, "name", None)) == g

    @property
    def is_symmetric(self) -> bool:
        return self.mode is Mode.SYMMETRIC


# -- nodes -----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Leaf:
    label: int
    color: str = DEFAULT_COLOR


@dataclass(frozen=True, slots=True)
class Node:
    gen: Generator
    children: tuple


def _node_color(node) -> str:
    return node.color if isinstance(node, Leaf) else node.gen.out_color


def _node_text(node, parts: list) -> None:
    if isinstance(node, Leaf):
        parts.append(str(node.label))
        if node.color != DEFAULT_COLOR:
            parts.append("@" + node.color)
        return
    parts.append(node.gen.name)
    parts.append("(")
    for j, ch in enumerate(node.children):
        if j:
            parts.append(",")
        _node_text(ch, parts)
    parts.append(")")


class PlanarTree:
    """Immutable tree with labeled leaves; equality and hashing go through the canonical key."""

    __slots__ = ("root", "arity", "_key", "_hash")

    def __init__(self, root, *, check: bool = True):
        self.root = root
        labels: list[int] = []
        self._walk(root, labels, check)
        self.arity = len(labels)
        if check and sorted(labels) != list(range(1, self.arity + 1)):
            raise OperadError(f"leaf labels {labels} are not a permutation of 1..{self.arity}")
        parts: list[str] = []
        _node_text(root, parts)
        self._key = "".join(parts)
        self._hash = hash(self._key)

    @staticmethod
    def _walk(node, labels, check):
        stack = [node]
        while stack:
            nd = stack.pop()
            if isinstance(nd, Leaf):
                labels.append(nd.label)
                continue
            if check:
                if len(nd.children) != nd.gen.arity:
                    raise ArityMismatch(
                        f"{nd.gen.name} has arity {nd.gen.arity} but {len(nd.children)} children")
                for c, ch in zip(nd.gen.in_colors, nd.children):
                    if _node_color(ch) != c:
                        raise ColorMismatch(
                            f"{nd.gen.name} expects color {c!r}, child has {_node_color(ch)!r}")
            stack.extend(reversed(nd.children))

    @property
    def color(self) -> str:
        """Output (root) color."""
        return _node_color(self.root)

    def leaf_colors(self) -> list[str]:
        """Input colors indexed by leaf label - 1."""
        out = [None] * self.arity
        for lf in self.leaves():
            out[lf.label - 1] = lf.color
        return out

    def leaves(self) -> list[Leaf]:
        """Leaves in planar (left-to-right) order."""
        out = []
        stack = [self.root]
        while stack:
            nd = stack.pop()
            if isinstance(nd, Leaf):
                out.append(nd)
            else:
                stack.extend(reversed(nd.children))
        return out

    def generators(self) -> list[Generator]:
        out = []
        stack = [self.root]
        while stack:
            nd = stack.pop()
            if isinstance(nd, Node):
                out.append(nd.gen)
                stack.extend(reversed(nd.children))
        return out

    @property
    def key(self) -> str:
        return self._key

    def __eq__(self, other):
        return isinstance(other, PlanarTree) and self._key == other._key

    def __lt__(self, other):
        return self._key.encode() < other._key.encode()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PlanarTree({self._key})"

    def __str__(self):
        return self._key


def canonical_key(t: PlanarTree) -> bytes:
    """Preorder encoding of ``t``: generator names, leaf labels and delimiters."""
    return t.key.encode("utf-8")


def sort_trees(trees) -> list[PlanarTree]:
    return sorted(trees, key=canonical_key)


# -- basic constructions ----------------------------------------------------

def identity(color: str = DEFAULT_COLOR) -> PlanarTree:
    return PlanarTree(Leaf(1, color), check=False)


def corolla(g: Generator) -> PlanarTree:
    return PlanarTree(Node(g, tuple(Leaf(i + 1, c) for i, c in enumerate(g.in_colors))), check=False)


def _shift(node, offset: int):
    if offset == 0:
        return node
    if isinstance(node, Leaf):
        return Leaf(node.label + offset, node.color)
    return Node(node.gen, tuple(_shift(ch, offset) for ch in node.children))


def _substitute(node, repl):
    """Rebuild ``node`` with ``repl(leaf)`` in place of every leaf."""
    if isinstance(node, Leaf):
        return repl(node)
    return Node(node.gen, tuple(_substitute(ch, repl) for ch in node.children))


def graft(t: PlanarTree, i: int, s: PlanarTree) -> PlanarTree:
    """Partial composition: plug ``s`` into the leaf of ``t`` labeled ``i``."""
    n, k = t.arity, s.arity
    if not 1 <= i <= n:
        raise PositionOutOfRange(f"position {i} not in 1..{n}")
    sroot = s.root

    def repl(lf):
        if lf.label == i:
            if lf.color != _node_color(sroot):
                raise ColorMismatch(f"leaf {i} has color {lf.color!r}, grafted root has {_node_color(sroot)!r}")
            return _shift(sroot, i - 1)
        if lf.label > i:
            return Leaf(lf.label + k - 1, lf.color)
        return lf

    return PlanarTree(_substitute(t.root, repl), check=False)


def gamma(t: PlanarTree, args: Sequence[PlanarTree]) -> PlanarTree:
    """Full composition: plug ``args[i-1]`` into leaf ``i`` for every ``i``."""
    if len(args) != t.arity:
        raise ArityMismatch(f"tree of arity {t.arity} composed with {len(args)} arguments")
    offsets = list(itertools.accumulate((a.arity for a in args), initial=0))

    def repl(lf):
        a = args[lf.label - 1]
        if lf.color != _node_color(a.root):
            raise ColorMismatch(f"leaf {lf.label} has color {lf.color!r}, argument root has {a.color!r}")
        return _shift(a.root, offsets[lf.label - 1])

    return PlanarTree(_substitute(t.root, repl), check=False)


# -- permutations -----------------------------------------------------------
# A permutation of n is a tuple p with p[l-1] = image of l (1-based values).

def check_perm(sigma: Sequence[int], n: int | None = None) -> tuple:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise OperadError(f"{sigma} is not a permutation")
    if n is not None and len(sigma) != n:
        raise ArityMismatch(f"permutation of {len(sigma)} acting on arity {n}")
    return sigma


def identity_perm(n: int) -> tuple:
    return tuple(range(1, n + 1))


def compose_perms(tau: Sequence[int], sigma: Sequence[int]) -> tuple:
    """tau o sigma: first sigma, then tau."""
    tau = check_perm(tau)
    sigma = check_perm(sigma, len(tau))
    return tuple(tau[s - 1] for s in sigma)


def invert_perm(sigma: Sequence[int]) -> tuple:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s - 1] = i + 1
    return tuple(inv)


def block_extension(sigma: Sequence[int], i: int, k: int) -> tuple:
    """Permutation of n+k-1 induced by ``sigma`` on the result of grafting k leaves at ``i``.

    Satisfies graft(act_perm(t, sigma), sigma(i), s) == act_perm(graft(t, i, s), ext).
    """
    si = sigma[i - 1]

    def pos(label, slot):
        return label if label < slot else label + k - 1

    out = []
    for label in range(1, len(sigma) + 1):
        if label == i:
            out.extend(si + j for j in range(k))
        else:
            out.append(pos(sigma[label - 1], si))
    # out lists images in order of the new labels
    return tuple(out)


def act_perm(t: PlanarTree, sigma: Sequence[int], sig: Signature | None = None) -> PlanarTree:
    """Relabel leaf l as sigma(l). Only meaningful in symmetric mode."""
    if sig is not None and not sig.is_symmetric:
        raise ModeError("permutation action requires a symmetric signature")
    sigma = check_perm(sigma, t.arity)
    return PlanarTree(_substitute(t.root, lambda lf: Leaf(sigma[lf.label - 1], lf.color)), check=False)


# -- enumeration --------------------------------------------------------------

def _compositions(total: int, parts: int, minimum: int = 1) -> Iterator[tuple]:
    """Ordered tuples of ``parts`` integers >= minimum summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def compositions(total: int, parts: int) -> list[tuple]:
    return list(_compositions(total, parts, 1))


@lru_cache(maxsize=None)
def _planar_nodes(sig: Signature, n: int, color: str, nodes: int) -> tuple:
    """Root nodes of planar trees of arity n, given root color and exactly ``nodes`` internal vertices.

    Leaves carry the identity labeling 1..n.
    """
    if nodes == 0:
        return (Leaf(1, color),) if n == 1 else ()
    out = []
    for g in sig.generators:
        if g.out_color != color or g.arity > n:
            continue
        for arities in _compositions(n, g.arity, 1):
            for budget in _compositions(nodes - 1, g.arity, 0):
                choices = [_planar_nodes(sig, a, c, b) for a, c, b in zip(arities, g.in_colors, budget)]
                if any(not ch for ch in choices):
                    continue
                offsets = list(itertools.accumulate(arities, initial=0))
                for combo in itertools.product(*choices):
                    out.append(Node(g, tuple(_shift(ch, off) for ch, off in zip(combo, offsets))))
    return tuple(out)


def planar_trees(sig: Signature, n: int, out_color: str | None = None,
                 max_nodes: int | None = None) -> list[PlanarTree]:
    """Identity-labeled trees of arity n (all shapes and vertex labelings), sorted."""
    if n < 1:
        raise OperadError("arity must be >= 1")
    if max_nodes is None:
        if any(g.arity == 1 for g in sig.generators):
            raise OperadError("signature has unary generators: pass max_nodes to bound enumeration")
        max_nodes = n - 1
    colors = sorted(sig.colors) if out_color is None else [out_color]
    trees = [PlanarTree(root, check=False)
             for c in colors for j in range(max_nodes + 1) for root in _planar_nodes(sig, n, c, j)]
    return sort_trees(trees)


def enumerate_trees(sig: Signature, n: int, out_color: str | None = None,
                    max_nodes: int | None = None) -> list[PlanarTree]:
    """All distinct trees of arity n over ``sig``, sorted by canonical key.

    Planar mode yields identity-labeled trees; symmetric mode adds every leaf
    labeling. ``out_color=None`` collects all root colors.
    """
    base = planar_trees(sig, n, out_color, max_nodes)
    if not sig.is_symmetric:
        return base
    perms = list(itertools.permutations(range(1, n + 1)))
    return sort_trees(act_perm(t, p) for t in base for p in perms)


# -- forests ------------------------------------------------------------------

class Forest:
    """Ordered trees plus ``input_order``: global input position of each leaf.

    Stored in normal form: inside each tree the leaf labels increase with the
    global input, so equal morphisms have equal keys.

    Leaves are indexed by concatenating the trees' leaves in label order:
    leaf ``l`` of tree ``j`` has local index ``sum(arities before j) + l``.
    ``input_order[local - 1]`` is its global input position. Outputs are the
    roots, in tree order.
    """

    __slots__ = ("trees", "input_order", "_key", "_hash")

    def __init__(self, trees: Sequence[PlanarTree], input_order: Sequence[int] | None = None):
        self.trees = tuple(trees)
        m = sum(t.arity for t in self.trees)
        if input_order is None:
            input_order = range(1, m + 1)
        self.input_order = tuple(input_order)
        if sorted(self.input_order) != list(range(1, m + 1)):
            raise BoundaryMismatch(f"input order {self.input_order} is not a permutation of 1..{m}")
        self.trees, self.input_order = _normalize_forest(self.trees, self.input_order)
        self._key = "|".join(t.key for t in self.trees) + "#" + ",".join(map(str, self.input_order))
        self._hash = hash(self._key)

    @property
    def n_in(self) -> int:
        return len(self.input_order)

    @property
    def n_out(self) -> int:
        return len(self.trees)

    @property
    def key(self) -> str:
        return self._key

    def input_colors(self) -> list[str]:
        out = [None] * self.n_in
        local = 0
        for t in self.trees:
            for c in t.leaf_colors():
                out[self.input_order[local] - 1] = c
                local += 1
        return out

    def output_colors(self) -> list[str]:
        return [t.color for t in self.trees]

    def __eq__(self, other):
        return isinstance(other, Forest) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Forest({self._key})"


def _normalize_forest(trees, order):
    # Within each tree, leaf labels follow increasing global input, so each
    # morphism has exactly one (trees, input_order) encoding.
    out_trees, out_order = [], []
    base = 0
    for t in trees:
        block = order[base:base + t.arity]
        ranked = sorted(block)
        if list(block) != ranked:
            t = act_perm(t, [ranked.index(x) + 1 for x in block])
        out_trees.append(t)
        out_order.extend(ranked)
        base += t.arity
    return tuple(out_trees), tuple(out_order)


EMPTY_FOREST = Forest(())


def identity_forest(n: int | Sequence[str]) -> Forest:
    colors = [DEFAULT_COLOR] * n if isinstance(n, int) else list(n)
    return Forest([identity(c) for c in colors])


def tree_forest(t: PlanarTree) -> Forest:
    return Forest([t])


def braiding_forest(m: int, n: int, colors: Sequence[str] | None = None) -> Forest:
    """Identity wires with the first m inputs routed past the last n: an element of F(m+n, n+m)."""
    colors = list(colors) if colors is not None else [DEFAULT_COLOR] * (m + n)
    trees = [identity(colors[m + j]) for j in range(n)] + [identity(colors[j]) for j in range(m)]
    order = [m + j + 1 for j in range(n)] + [j + 1 for j in range(m)]
    return Forest(trees, order)


def forest_tensor(f: Forest, g: Forest) -> Forest:
    m = f.n_in
    return Forest(f.trees + g.trees, f.input_order + tuple(x + m for x in g.input_order))


def forest_compose(f: Forest, g: Forest) -> Forest:
    """First f, then g: root p of f is glued to the leaf of g at global input p."""
    if f.n_out != g.n_in:
        raise BoundaryMismatch(f"{f.n_out} outputs glued to {g.n_in} inputs")
    f_offsets = list(itertools.accumulate((t.arity for t in f.trees), initial=0))
    trees = []
    order = []
    local = 0
    for gt in g.trees:
        args = []
        for label in range(1, gt.arity + 1):
            p = g.input_order[local + label - 1]
            ft = f.trees[p - 1]
            args.append(ft)
            base = f_offsets[p - 1]
            order.extend(f.input_order[base:base + ft.arity])
        local += gt.arity
        trees.append(gamma(gt, args))
    return Forest(trees, order)
