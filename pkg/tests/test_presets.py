import pytest

from operadkit.presets import PresetName, preset, preset_names
from operadkit.trees import Mode


def test_names():
    assert preset_names() == ["assoc-planar", "assoc", "comm", "lie", "poisson"]
    assert preset(PresetName.LIE) is preset("lie")
    with pytest.raises(ValueError):
        preset("gerstenhaber")


@pytest.mark.parametrize("name,mode,gens,arities", [
    ("assoc-planar", Mode.PLANAR, {"g"}, [3]),
    ("assoc", Mode.SYMMETRIC, {"g"}, [3]),
    ("comm", Mode.SYMMETRIC, {"g"}, [3, 2]),
    ("lie", Mode.SYMMETRIC, {"b"}, [2, 3]),
    ("poisson", Mode.SYMMETRIC, {"m", "b"}, [3, 2, 2, 3, 3]),
])
def test_shapes(name, mode, gens, arities):
    p = preset(name)
    assert p.sig.mode is mode
    assert {g.name for g in p.sig.generators} == gens
    assert all(g.arity == 2 for g in p.sig.generators)
    assert [r.arity for r in p.relators] == arities


def test_relator_texts():
    assert str(preset("assoc-planar").relators[0]) == "-g(1,g(2,3)) + g(g(1,2),3)"
    assert str(preset("lie").relators[0]) == "b(1,2) + b(2,1)"
    leibniz = preset("poisson").relators[4]
    assert str(leibniz) == "-b(1,m(2,3)) + m(2,b(1,3)) + m(b(1,2),3)"


def test_fingerprints_are_distinct_and_stable():
    prints = [preset(n).fingerprint for n in preset_names()]
    assert len(set(prints)) == len(prints)
    assert preset("comm").fingerprint == preset("comm").fingerprint
