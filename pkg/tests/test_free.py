import json
import random
from math import prod

import pytest

from helpers import PLANAR, SYMMETRIC, random_element, random_prop_element
from operadkit.errors import ArityMismatch, BoundaryMismatch, ModeError, SignatureMismatch
from operadkit.free import (
    GeneratedProp,
    OperadElement,
    PropElement,
    braiding,
    dumps_element,
    free_operad_basis,
    generator_element,
    lin_compose,
    lin_gamma,
    lin_tensor,
    prop_component_basis,
    underlying_operad,
)
from operadkit.trees import (
    EMPTY_FOREST,
    Forest,
    Mode,
    Signature,
    compositions,
    enumerate_trees,
    forest_tensor,
    gamma,
    identity,
    identity_forest,
)

G2 = Signature.monochrome({"g": 2})
G2S = Signature.monochrome({"g": 2}, Mode.SYMMETRIC)


def el(text, sig=SYMMETRIC):
    return OperadElement.parse(text, sig)


def test_arithmetic_never_stores_zeros():
    a = el("g(1,2) + 2 g(2,1)")
    assert (a - a).is_zero() and not (a - a).terms
    assert (a * 0).terms == {}
    assert (a + a).coefficient(el("g(2,1)").sorted_terms()[0][0]) == 4
    assert str(el("g(g(1,2),3) - g(1,g(2,3))", PLANAR)) == "-g(1,g(2,3)) + g(g(1,2),3)"
    assert str(el("1/2 g(1,2)")) == "1/2*g(1,2)"
    assert str(OperadElement.zero(SYMMETRIC, 2)) == "0"


def test_mixed_arities_rejected():
    with pytest.raises(ArityMismatch):
        el("g(1,2) + g(1,g(2,3))")
    with pytest.raises(ArityMismatch):
        el("g(1,2)") + el("h(1,2,3)")


def test_json_round_trip():
    a = el("g(g(1,2),3) - 3/2 g(1,g(2,3))")
    doc = json.loads(dumps_element(a))
    assert doc["arity"] == 3
    assert {"coeff": "-3/2", "tree": "g(1,g(2,3))"} in doc["terms"]
    assert OperadElement.from_json(doc, SYMMETRIC) == a


def test_lin_gamma_on_basis_matches_gamma():
    r = random.Random(0)
    for _ in range(30):
        t = random_element(r, SYMMETRIC, 2, terms=1)
        args = [random_element(r, SYMMETRIC, r.randint(1, 3), terms=1) for _ in range(2)]
        (tt, c), = t.terms.items()
        trees = [next(iter(a.terms)) for a in args]
        coeff = c * prod(next(iter(a.terms.values())) for a in args)
        assert lin_gamma(t, args) == OperadElement.basis(SYMMETRIC, gamma(tt, trees), coeff)


def test_lin_gamma_unit_scaling_and_multilinearity():
    r = random.Random(1)
    unit = OperadElement.unit(SYMMETRIC)
    for _ in range(30):
        n = r.randint(1, 3)
        t = random_element(r, SYMMETRIC, n, terms=3)
        args = [random_element(r, SYMMETRIC, r.randint(1, 2)) for _ in range(n)]
        assert lin_gamma(t, [unit] * n) == t
        assert lin_gamma(t * 2, args) == lin_gamma(t, args) * 2
        extra = random_element(r, SYMMETRIC, args[0].arity)
        split = lin_gamma(t, [args[0]] + args[1:]) + lin_gamma(t, [extra] + args[1:])
        assert lin_gamma(t, [args[0] + extra] + args[1:]) == split


def test_lin_gamma_errors():
    g = generator_element(SYMMETRIC, "g")
    with pytest.raises(ArityMismatch):
        lin_gamma(g, [g])
    with pytest.raises(SignatureMismatch):
        lin_gamma(g, [generator_element(G2S, "g"), generator_element(G2S, "g")])


def test_symmetric_action_on_elements():
    a = el("g(1,2) + 2 g(2,1)")
    assert a.act((2, 1)) == el("g(2,1) + 2 g(1,2)")
    with pytest.raises(ModeError):
        el("g(1,2)", PLANAR).act((2, 1))


def test_prop_tensor_bilinear_and_zero():
    r = random.Random(2)
    a = random_prop_element(r, SYMMETRIC, 3, 2)
    b = random_prop_element(r, SYMMETRIC, 3, 2)
    c = random_prop_element(r, SYMMETRIC, 2, 1)
    assert lin_tensor(a + b, c) == lin_tensor(a, c) + lin_tensor(b, c)
    assert lin_tensor(a, PropElement.zero(SYMMETRIC, 2, 1)).is_zero()
    f, g = next(iter(a.terms)), next(iter(c.terms))
    assert lin_tensor(PropElement.basis(SYMMETRIC, f), PropElement.basis(SYMMETRIC, g)) == \
        PropElement.basis(SYMMETRIC, forest_tensor(f, g))


def test_prop_compose_identity_zero_and_errors():
    r = random.Random(3)
    for _ in range(20):
        a = random_prop_element(r, SYMMETRIC, 4, 2)
        assert lin_compose(PropElement.identity(SYMMETRIC, 4), a) == a
        assert lin_compose(a, PropElement.identity(SYMMETRIC, 2)) == a
        assert lin_compose(a, PropElement.zero(SYMMETRIC, 2, 1)).is_zero()
    with pytest.raises(BoundaryMismatch):
        lin_compose(a, a)


def test_braiding():
    s = braiding(SYMMETRIC, 1, 1)
    (f, c), = s.terms.items()
    assert c == 1 and f.input_order == (2, 1)
    assert s != PropElement.identity(SYMMETRIC, 2)
    assert lin_compose(s, s) == PropElement.identity(SYMMETRIC, 2)
    for m in range(1, 4):
        for n in range(1, 4):
            assert lin_compose(braiding(SYMMETRIC, m, n), braiding(SYMMETRIC, n, m)) == PropElement.identity(SYMMETRIC, m + n)
    with pytest.raises(ModeError):
        braiding(PLANAR, 1, 1)


def test_tensor_unit_is_empty_forest():
    one = PropElement.basis(SYMMETRIC, EMPTY_FOREST)
    a = random_prop_element(random.Random(4), SYMMETRIC, 3, 2)
    assert lin_tensor(one, a) == a == lin_tensor(a, one)


def test_prop_component_basis_counts():
    basis = free_operad_basis(G2)
    assert len(prop_component_basis(basis, 3, 2)) == 2
    assert prop_component_basis(basis, 3, 3) == [identity_forest(3)]
    assert prop_component_basis(basis, 2, 3) == []
    comm = {n: [enumerate_trees(G2S, n)[0]] for n in range(1, 6)}
    assert len(prop_component_basis(comm, 4, 2)) == 3
    for m in range(1, 7):
        for l in range(1, m + 1):
            expected = sum(prod(len(basis(k)) for k in comp) for comp in compositions(m, l))
            assert len(prop_component_basis(basis, m, l)) == expected


def test_underlying_operad_of_generated_prop():
    prop = GeneratedProp(free_operad_basis(SYMMETRIC))
    for n in range(1, 5):
        assert underlying_operad(prop, n) == enumerate_trees(SYMMETRIC, n)
    assert underlying_operad(prop, 1) == [identity()]
    assert all(isinstance(f, Forest) and f.n_out == 2 for f in prop.component(4, 2))
