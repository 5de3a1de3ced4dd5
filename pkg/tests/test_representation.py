import itertools
import json
import random
from fractions import Fraction

import numpy as np
import pytest

from helpers import random_tree
from operadkit.errors import DimensionMismatch, SchemaError, SignatureMismatch
from operadkit.expr import parse_tree
from operadkit.free import OperadElement
from operadkit.presets import preset
from operadkit.quotient import ideal_slice
from operadkit.representation import (
    FinSpace,
    Interpretation,
    MultilinearMap,
    check_algebra,
    end_compose,
    interpret,
    interpretation_to_json,
    load_interpretation,
    map_from_json,
    matrix_algebra,
    sl2_bracket,
    structure_constants,
    truncated_polynomials,
)
from operadkit.trees import Mode, Signature, act_perm, gamma, identity

DATA = __import__("pathlib").Path(__file__).resolve().parent.parent / "data"


def random_map(r, dim, n_in, n_out=1, lo=-2, hi=2):
    return MultilinearMap.from_function(dim, n_in, n_out, lambda out, inp: Fraction(r.randint(lo, hi)))


def mat(rows):
    return MultilinearMap.from_rows(rows, len(rows), 1, 1)


def test_matrix_product_as_composite():
    a, b = mat([[1, 2], [3, 4]]), mat([[0, 1], [1, 1]])
    # end_compose(f, [g]) = f after g
    assert end_compose(a, [b]).to_rows() == [[2, 3], [4, 7]]
    assert a.then(b).to_rows() == [[3, 4], [4, 6]]


def test_compose_with_identities():
    r = random.Random(0)
    f = random_map(r, 2, 3)
    idm = MultilinearMap.identity(2)
    assert end_compose(f, [idm] * 3) == f
    assert end_compose(idm, [f]) == f
    with pytest.raises(DimensionMismatch):
        end_compose(f, [idm, idm])


def test_bilinear_composite_matches_index_contraction():
    r = random.Random(1)
    m = random_map(r, 2, 2)
    comp = end_compose(m, [m, MultilinearMap.identity(2)])
    e = m.entries
    for o, a, b, c in itertools.product(range(2), repeat=4):
        expected = sum(e[o, k, c] * e[k, a, b] for k in range(2))
        assert comp.entries[o, a, b, c] == expected


def test_interpret_basics():
    rho = Interpretation(FinSpace(4), {"g": matrix_algebra(2)})
    sig = preset("assoc-planar").sig
    assert interpret(identity(), rho) == MultilinearMap.identity(4)
    assert interpret(parse_tree("g(1,2)", sig), rho) == matrix_algebra(2)
    left = interpret(parse_tree("g(g(1,2),3)", sig), rho)
    right = interpret(parse_tree("g(1,g(2,3))", sig), rho)
    assert (left - right).is_zero()


def test_interpret_matches_numeric_matrix_products():
    rho = Interpretation(FinSpace(4), {"g": matrix_algebra(2)})
    sig = preset("assoc-planar").sig
    r = random.Random(2)
    mats = [np.array([[r.randint(-3, 3) for _ in range(2)] for _ in range(2)]) for _ in range(3)]
    vecs = [np.array([Fraction(int(x)) for x in m.flatten()], dtype=object) for m in mats]
    out = interpret(parse_tree("g(g(1,2),3)", sig), rho).apply(*vecs)
    assert [int(x) for x in out] == list((mats[0] @ mats[1] @ mats[2]).flatten())


def test_interpret_is_an_operad_morphism():
    sig = Signature.monochrome({"g": 2, "h": 3}, Mode.SYMMETRIC)
    r = random.Random(3)
    rho = Interpretation(FinSpace(2), {"g": random_map(r, 2, 2), "h": random_map(r, 2, 3)})
    for _ in range(15):
        t = random_tree(r, sig, r.randint(1, 3))
        args = [random_tree(r, sig, r.randint(1, 2)) for _ in range(t.arity)]
        if sum(a.arity for a in args) > 4:
            continue
        assert interpret(gamma(t, args), rho) == end_compose(interpret(t, rho), [interpret(a, rho) for a in args])


def test_equivariance():
    sig = Signature.monochrome({"g": 2}, Mode.SYMMETRIC)
    r = random.Random(4)
    rho = Interpretation(FinSpace(2), {"g": random_map(r, 2, 2)})
    t = parse_tree("g(g(1,2),3)", sig)
    vecs = [np.array([Fraction(r.randint(-3, 3)) for _ in range(2)], dtype=object) for _ in range(3)]
    for s in itertools.permutations((1, 2, 3)):
        moved = interpret(act_perm(t, s), rho)
        # leaf l of t now carries label s(l), so it reads input slot s(l)
        assert list(moved.apply(*vecs)) == list(interpret(t, rho).apply(*[vecs[x - 1] for x in s]))


def test_stock_structures_pass():
    assert check_algebra(preset("assoc-planar"), Interpretation(FinSpace(4), {"g": matrix_algebra(2)})).passed
    assert check_algebra(preset("assoc"), Interpretation(FinSpace(9), {"g": matrix_algebra(3)})).passed
    assert check_algebra(preset("lie"), Interpretation(FinSpace(3), {"b": sl2_bracket()})).passed
    assert check_algebra(preset("comm"), Interpretation(FinSpace(4), {"g": truncated_polynomials(4)})).passed
    assert not check_algebra(preset("comm"), Interpretation(FinSpace(4), {"g": matrix_algebra(2)})).passed


def test_commutator_of_matrices_is_lie():
    m = matrix_algebra(2)
    bracket = m - m.permute_inputs((2, 1))
    assert check_algebra(preset("lie"), Interpretation(FinSpace(4), {"b": bracket})).passed


def test_random_perturbation_fails_with_witness():
    r = random.Random(5)
    base = matrix_algebra(2)
    for _ in range(5):
        entries = base.entries.copy()
        idx = tuple(r.randrange(4) for _ in range(3))
        entries[idx] += Fraction(r.choice([-2, -1, 1, 2]))
        report = check_algebra(preset("assoc-planar"), Interpretation(FinSpace(4), {"g": MultilinearMap(2, 1, 4, entries)}))
        assert not report.passed
        assert report.checks[0].witness[2] != 0


def test_pass_iff_ideal_members_vanish():
    p = preset("lie")
    good = Interpretation(FinSpace(3), {"b": sl2_bracket()})
    members = ideal_slice(p, 4).rows(p.sig)
    r = random.Random(6)
    for e in r.sample(members, 10):
        assert interpret(e, good).is_zero()
    bad = sl2_bracket()
    entries = bad.entries.copy()
    entries[0, 0, 1] += 1
    entries[0, 1, 0] -= 1
    bad_rho = Interpretation(FinSpace(3), {"b": MultilinearMap(2, 1, 3, entries)})
    assert not check_algebra(p, bad_rho).passed
    assert any(not interpret(e, bad_rho).is_zero() for e in members)


def test_signature_errors():
    rho = Interpretation(FinSpace(3), {"b": sl2_bracket()})
    with pytest.raises(SignatureMismatch):
        check_algebra(preset("assoc"), rho)
    with pytest.raises(SignatureMismatch):
        Interpretation(FinSpace(3), {"b": MultilinearMap.zero(3, 3, 1)}, preset("lie").sig)
    with pytest.raises(DimensionMismatch):
        Interpretation(FinSpace(2), {"b": sl2_bracket()})


def test_json_round_trip_and_files():
    rho = load_interpretation(DATA / "sl2.json", preset("lie").sig)
    assert rho.map_for("b") == sl2_bracket()
    doc = json.loads(json.dumps(interpretation_to_json(rho)))
    again = load_interpretation(doc)
    assert again.map_for("b") == rho.map_for("b")
    assert load_interpretation(DATA / "matrices2.json").map_for("g") == matrix_algebra(2)


@pytest.mark.parametrize("doc,field", [
    ({"generators": {}}, "dim"),
    ({"dim": 0, "generators": {}}, "dim"),
    ({"dim": 2}, "generators"),
    ({"dim": 2, "generators": {"g": {"arity": 2, "entries": [["1"]]}}}, "generators.g.entries"),
    ({"dim": 1, "generators": {"g": {"arity": 2, "entries": [["x"]]}}}, "generators.g.entries"),
    ({"dim": 1, "generators": {"g": {"entries": [["1"]]}}}, "generators.g.arity"),
])
def test_schema_errors_name_the_field(doc, field):
    with pytest.raises(SchemaError) as info:
        load_interpretation(doc)
    assert info.value.field.startswith(field)


def test_map_from_json_reads_rationals():
    m = map_from_json({"arity": 1, "entries": [["1/2", "0"], ["-3", "2"]]}, 2, "x")
    assert m.to_rows() == [[Fraction(1, 2), 0], [-3, 2]]


def test_structure_constants_and_truncation():
    # C[x]/(x^3): x * x = x^2, x * x^2 = 0
    t = truncated_polynomials(3)
    assert t == structure_constants(3, {(i, j): {i + j: 1} for i in range(3) for j in range(3) if i + j < 3})
    elem = OperadElement.parse("g(g(1,2),3)", preset("comm").sig)
    value = interpret(elem, Interpretation(FinSpace(3), {"g": t}))
    assert value.entries[2, 1, 1, 0] == 1 and value.entries[2, 1, 1, 1] == 0
