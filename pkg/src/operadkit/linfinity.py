"""Homotopy Lie (L-infinity) relations.

Brackets m_k: V^{⊗k} -> V have degree k - 2 and are graded antisymmetric. The
relation of arity n is

    sum_{i+j=n+1} sum_{sigma} chi(sigma) (-1)^{i(j-1)}
        m_j(m_i(x_{s(1)}, ..., x_{s(i)}), x_{s(i+1)}, ..., x_{s(n)}) = 0

over (i, n-i)-unshuffles sigma, with chi the antisymmetric Koszul sign. For
n = 1, 2 this reads d^2 = 0 and d[x,y] = [dx,y] + (-1)^|x| [x,dy]; for a DGLA
(only m_1, m_2) n = 3 is the graded Jacobi identity and higher relations are
vacuous.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import ArityOutOfRange, DimensionMismatch, LengthMismatch, OperadError, SchemaError
from .linalg import ZERO, format_rational, to_rational
from .representation import MultilinearMap, _load_doc


def koszul_epsilon(sigma: Sequence[int], degrees: Sequence[int]) -> int:
    """Symmetric Koszul sign of rearranging x_1..x_n into x_{sigma(1)}..x_{sigma(n)}."""
    if len(sigma) != len(degrees):
        raise LengthMismatch(f"permutation of {len(sigma)} with {len(degrees)} degrees")
    sign = 1
    n = len(sigma)
    for a in range(n):
        for b in range(a + 1, n):
            if sigma[a] > sigma[b] and degrees[sigma[a] - 1] % 2 and degrees[sigma[b] - 1] % 2:
                sign = -sign
    return sign


def koszul_sign(sigma: Sequence[int], degrees: Sequence[int]) -> int:
    """Antisymmetric Koszul sign: each transposed pair contributes -(-1)^{|x||y|}."""
    if len(sigma) != len(degrees):
        raise LengthMismatch(f"permutation of {len(sigma)} with {len(degrees)} degrees")
    sign = 1
    n = len(sigma)
    for a in range(n):
        for b in range(a + 1, n):
            if sigma[a] > sigma[b]:
                if not (degrees[sigma[a] - 1] % 2 and degrees[sigma[b] - 1] % 2):
                    sign = -sign
    return sign


def unshuffles(i: int, n: int):
    """Permutations sigma of 1..n increasing on 1..i and on i+1..n (as image tuples)."""
    for first in itertools.combinations(range(1, n + 1), i):
        rest = tuple(x for x in range(1, n + 1) if x not in first)
        yield first + rest


@dataclass(frozen=True)
class GradedSpace:
    degrees: tuple
    names: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if not self.degrees:
            raise DimensionMismatch("a graded space needs at least one basis element")
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(len(self.degrees))))
        else:
            object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != len(self.degrees):
            raise DimensionMismatch("one name per basis element")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def components(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise OperadError(f"unknown basis element {name!r}") from None

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.empty(self.dim, dtype=object)
        v.fill(ZERO)
        v[i] = Fraction(1)
        return v

    def degree_of(self, v: np.ndarray) -> int:
        degs = {self.degrees[i] for i in range(self.dim) if v[i] != 0}
        if len(degs) > 1:
            raise OperadError(f"vector is not homogeneous (degrees {sorted(degs)})")
        return degs.pop() if degs else 0


class BracketFamily:
    """Graded antisymmetric brackets m_k of degree k - 2.

    Missing arities are zero. ``max_arity`` (optional) bounds the arities for
    which the family is declared; relations needing larger brackets are then
    out of range.
    """

    def __init__(self, space: GradedSpace, brackets: Mapping[int, MultilinearMap],
                 max_arity: int | None = None, *, check: bool = True):
        self.space = space
        self.brackets = dict(brackets)
        self.max_arity = max_arity
        for k, m in self.brackets.items():
            if k < 1:
                raise ArityOutOfRange("bracket arities start at 1")
            if (m.n_in, m.n_out, m.dim) != (k, 1, space.dim):
                raise DimensionMismatch(f"m_{k} must be a {k} -> 1 map on a {space.dim}-dimensional space")
            if max_arity is not None and k > max_arity:
                raise ArityOutOfRange(f"m_{k} exceeds max_arity {max_arity}")
        if check:
            problems = self.problems()
            if problems:
                raise OperadError("; ".join(problems[:3]))

    def problems(self) -> list[str]:
        """Violations of the degree and antisymmetry constraints."""
        out = []
        deg = self.space.degrees
        for k, m in sorted(self.brackets.items()):
            for o, inp, v in m.nonzero_entries():
                if deg[o[0]] != sum(deg[i] for i in inp) + k - 2:
                    out.append(f"m_{k}{inp} -> {o[0]} has the wrong degree")
            for idx in itertools.product(range(self.space.dim), repeat=k):
                degs = [deg[i] for i in idx]
                for a in range(k - 1):
                    swapped = list(idx)
                    swapped[a], swapped[a + 1] = swapped[a + 1], swapped[a]
                    s = -1 if degs[a] % 2 and degs[a + 1] % 2 else 1
                    lhs = m.entries[(slice(None),) + tuple(idx)]
                    rhs = m.entries[(slice(None),) + tuple(swapped)]
                    if any(x != -s * y for x, y in zip(lhs, rhs)):
                        out.append(f"m_{k} is not graded antisymmetric at {idx}")
                        break
        return out

    def bracket(self, k: int) -> MultilinearMap | None:
        return self.brackets.get(k)

    def apply(self, k: int, vectors: Sequence[np.ndarray]) -> np.ndarray | None:
        m = self.brackets.get(k)
        if m is None:
            return None
        return m.apply(*vectors)


def _as_vector(space: GradedSpace, x) -> np.ndarray:
    if isinstance(x, (int, np.integer)):
        return space.basis_vector(int(x))
    v = np.asarray([to_rational(c) for c in x], dtype=object)
    if v.shape != (space.dim,):
        raise DimensionMismatch(f"vector of length {len(v)} in a {space.dim}-dimensional space")
    return v


def linf_defect(b: BracketFamily, n: int, inputs: Sequence) -> np.ndarray:
    """Left-hand side of the arity-n relation on homogeneous inputs (basis indices or vectors)."""
    if n < 1:
        raise ArityOutOfRange("relations start at arity 1")
    if b.max_arity is not None and n > b.max_arity:
        raise ArityOutOfRange(f"relation {n} needs brackets beyond max_arity {b.max_arity}")
    if len(inputs) != n:
        raise LengthMismatch(f"{len(inputs)} inputs for the arity-{n} relation")
    space = b.space
    xs = [_as_vector(space, x) for x in inputs]
    degs = [space.degree_of(v) for v in xs]
    total = np.empty(space.dim, dtype=object)
    total.fill(ZERO)
    for i in range(1, n + 1):
        j = n + 1 - i
        mi, mj = b.bracket(i), b.bracket(j)
        if mi is None or mj is None:
            continue
        outer = -1 if (i * (j - 1)) % 2 else 1
        for sigma in unshuffles(i, n):
            chi = koszul_sign(sigma, degs)
            inner = mi.apply(*[xs[s - 1] for s in sigma[:i]])
            val = mj.apply(inner, *[xs[s - 1] for s in sigma[i:]])
            total = total + val * (chi * outer)
    return np.asarray(total, dtype=object)


@dataclass
class LInfReport:
    passed: bool
    up_to: int
    checked: int
    failure: tuple | None = None  # (n, input indices, defect vector)

    def to_json(self, space: GradedSpace | None = None) -> dict:
        doc = {"passed": self.passed, "up_to": self.up_to, "checked": self.checked}
        if self.failure is not None:
            n, inputs, defect = self.failure
            names = [space.names[i] for i in inputs] if space else list(inputs)
            doc["failure"] = {"arity": n, "inputs": names,
                              "defect": [format_rational(x) for x in defect]}
        return doc


def check_linf(b: BracketFamily, up_to: int) -> LInfReport:
    """Evaluate the relations n = 1..up_to on every tuple of basis elements."""
    if up_to < 1:
        raise ArityOutOfRange("up_to must be >= 1")
    checked = 0
    for n in range(1, up_to + 1):
        for inputs in itertools.product(range(b.space.dim), repeat=n):
            d = linf_defect(b, n, inputs)
            checked += 1
            if any(x != 0 for x in d):
                return LInfReport(False, up_to, checked, (n, inputs, d))
    return LInfReport(True, up_to, checked)


def from_lie_bracket(bracket: MultilinearMap, names: Sequence[str] | None = None) -> BracketFamily:
    """An ordinary Lie algebra in degree 0 as an L-infinity algebra (m_1 = 0)."""
    space = GradedSpace((0,) * bracket.dim, names)
    return BracketFamily(space, {2: bracket}, check=False)


# -- file format ----------------------------------------------------------------

def load_brackets(source) -> BracketFamily:
    """Read a graded space and brackets from JSON::

        {"basis": [{"name": "x", "degree": 0}, ...],
         "brackets": {"2": [{"args": ["x", "y"], "value": {"z": "1"}}, ...]},
         "max_arity": 4}

    Unlisted entries are zero; each listed entry is completed by graded
    antisymmetry, and contradictory entries are rejected.
    """
    doc = _load_doc(source)
    basis = doc.get("basis")
    if not isinstance(basis, list) or not basis:
        raise SchemaError("basis", "must be a non-empty list")
    names, degrees = [], []
    for j, item in enumerate(basis):
        if not isinstance(item, Mapping) or "name" not in item or "degree" not in item:
            raise SchemaError(f"basis[{j}]", "needs 'name' and 'degree'")
        if not isinstance(item["degree"], int):
            raise SchemaError(f"basis[{j}].degree", "must be an integer")
        names.append(str(item["name"]))
        degrees.append(item["degree"])
    if len(set(names)) != len(names):
        raise SchemaError("basis", "duplicate names")
    space = GradedSpace(tuple(degrees), tuple(names))
    raw = doc.get("brackets", {})
    if not isinstance(raw, Mapping):
        raise SchemaError("brackets", "must be an object keyed by arity")
    brackets = {}
    for key, entries in raw.items():
        where = f"brackets.{key}"
        try:
            k = int(key)
        except ValueError:
            raise SchemaError(where, "arity keys must be integers") from None
        if k < 1:
            raise SchemaError(where, "arity must be >= 1")
        if not isinstance(entries, list):
            raise SchemaError(where, "must be a list of entries")
        m = MultilinearMap.zero(space.dim, k, 1)
        filled: dict[tuple, list] = {}
        for e_idx, entry in enumerate(entries):
            ew = f"{where}[{e_idx}]"
            args = entry.get("args") if isinstance(entry, Mapping) else None
            value = entry.get("value") if isinstance(entry, Mapping) else None
            if not isinstance(args, list) or len(args) != k:
                raise SchemaError(f"{ew}.args", f"must list {k} basis names")
            if not isinstance(value, Mapping):
                raise SchemaError(f"{ew}.value", "must map basis names to rationals")
            try:
                idx = tuple(space.index(a) for a in args)
                vec = [ZERO] * space.dim
                for nm, c in value.items():
                    vec[space.index(nm)] = to_rational(c)
            except (OperadError, ValueError, TypeError, ZeroDivisionError) as exc:
                raise SchemaError(ew, str(exc)) from None
            degs = [space.degrees[i] for i in idx]
            for sigma in itertools.permutations(range(1, k + 1)):
                target = tuple(idx[s - 1] for s in sigma)
                sign = koszul_sign(sigma, degs)
                val = [sign * x for x in vec]
                prev = filled.get(target)
                if prev is not None and prev != val:
                    raise SchemaError(ew, f"contradicts graded antisymmetry at {[space.names[i] for i in target]}")
                filled[target] = val
        for target, val in filled.items():
            for o, x in enumerate(val):
                m.entries[(o,) + target] = x
        brackets[k] = m
    max_arity = doc.get("max_arity")
    if max_arity is not None and not isinstance(max_arity, int):
        raise SchemaError("max_arity", "must be an integer")
    try:
        return BracketFamily(space, brackets, max_arity)
    except OperadError as exc:
        raise SchemaError("brackets", str(exc)) from None
