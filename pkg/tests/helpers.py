"""Random generators and brute-force oracles shared by the tests."""

import random
from fractions import Fraction
from math import comb, factorial

from operadkit.free import OperadElement, PropElement
from operadkit.trees import Forest, Mode, Signature, act_perm, corolla, graft, identity


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def count_binary_planar(n, _memo={1: 1}):
    """Recursive count of planar binary trees with n leaves (root split)."""
    if n not in _memo:
        _memo[n] = sum(count_binary_planar(k) * count_binary_planar(n - k) for k in range(1, n))
    return _memo[n]


def random_tree(rng, sig, arity):
    """Random tree of the given arity from generators of arity >= 2 (and the unit)."""
    if arity == 1:
        return identity()
    gens = [g for g in sig.generators if 2 <= g.arity <= arity]
    t = corolla(rng.choice(gens))
    while t.arity < arity:
        gens = [g for g in sig.generators if 2 <= g.arity <= arity - t.arity + 1]
        t = graft(t, rng.randint(1, t.arity), corolla(rng.choice(gens)))
    if sig.mode is Mode.SYMMETRIC:
        perm = list(range(1, arity + 1))
        rng.shuffle(perm)
        t = act_perm(t, perm)
    return t


def random_element(rng, sig, arity, terms=2):
    e = OperadElement.zero(sig, arity)
    for _ in range(terms):
        e = e + OperadElement.basis(sig, random_tree(rng, sig, arity), Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)))
    return e


def random_split(rng, total, parts):
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def random_forest(rng, sig, n_in, n_out):
    trees = [random_tree(rng, sig, k) for k in random_split(rng, n_in, n_out)]
    order = list(range(1, n_in + 1))
    if sig.mode is Mode.SYMMETRIC:
        rng.shuffle(order)
    return Forest(trees, order)


def random_prop_element(rng, sig, n_in, n_out, terms=2):
    e = PropElement.zero(sig, n_in, n_out)
    for _ in range(terms):
        e = e + PropElement.basis(sig, random_forest(rng, sig, n_in, n_out), rng.randint(-2, 2) or 1)
    return e


PLANAR = Signature.monochrome({"g": 2, "h": 3}, Mode.PLANAR)
SYMMETRIC = Signature.monochrome({"g": 2, "h": 3}, Mode.SYMMETRIC)


def symmetric_binary_count(n):
    return factorial(n) * catalan(n - 1)


def rng(seed=0):
    return random.Random(seed)
