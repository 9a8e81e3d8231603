import json

import pytest

import brst


def test_builtins_are_valid():
    for name in ["so3", "so21", "iso3", "iso21", "so21+so21"]:
        g = brst.LieAlgebra.builtin(name)
        assert g.is_valid()
    assert brst.LieAlgebra.builtin("iso21").killing_rank() == 3
    assert brst.LieAlgebra.builtin("so21+so21").killing_rank() == 6


def test_structure_constants_and_round_trip():
    g = brst.LieAlgebra.builtin("so3")
    assert g.dim == 3
    # [e1,e2] = e3 up to the basis sign convention, and antisymmetric
    assert g.f(0, 1, 2) != "0"
    assert g.f(0, 1, 2) == str(-int(g.f(1, 0, 2)))
    h = brst.LieAlgebra.from_json(g.to_json())
    assert json.loads(h.to_json()) == json.loads(g.to_json())
    with pytest.raises(IndexError):
        g.f(0, 1, 3)


def test_unknown_algebra_raises_parse_error():
    with pytest.raises(brst.ParseError):
        brst.LieAlgebra.builtin("so5")
    assert issubclass(brst.ParseError, brst.Error)


def test_semisimple_ghost_cohomology():
    r = brst.compute("cohomology", algebra="so3", max_ghost=3)
    assert r["dims"] == [1, 0, 0, 1]


def test_descent_classification_counts():
    r = brst.compute("descent", "classify", algebra="iso21", max_curv_degree=2)
    assert [len(r["classes"][k]) for k in ("F1", "d1F1", "E2")] == [8, 4, 4]


def test_errors_carry_exit_codes():
    with pytest.raises(brst.CommandError) as e:
        brst.compute("validate")
    assert e.value.code == 2 and e.value.kind == "parse"
    code, out, err = brst.run(["hs-table", "--algebra", "iso3", "--max-curv-degree", "0"])
    assert code == 4 and json.loads(err)["error"] == "resource"
