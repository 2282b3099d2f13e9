import pytest

import bdcoideal


def test_roots_g2():
    data = bdcoideal.roots("G2")
    assert data["positive_roots"] == 6
    assert data["dimension"] == 14


def test_split_a2_is_coideal_only_for_vanishing_lambda():
    case = {"type": "A2", "sigma": {"shape": "varsigma"}, "triple": "trivial"}
    assert bdcoideal.check({**case, "lambda": {"1,2": "0"}})["coideal"]
    twisted = bdcoideal.check({**case, "lambda": {"1,2": "1"}})
    assert not twisted["coideal"]
    assert "witness" in twisted


def test_solve_lambda_flip():
    rec = bdcoideal.solve_lambda({"type": "A3", "sigma": {"shape": "varsigma_mu", "mu": [3, 2, 1]}})
    assert rec["group_type"]
    assert rec["lambda"]["condition"] == "Re l[1,2] = 0"


def test_classify_painted_roots_of_c3():
    records = bdcoideal.classify({"types": ["C3"], "sigma": ["omega_J"]}, jobs=2)
    marked = {r["painted_root"] for r in records if r["group_type"]}
    assert marked == {"a3"}


def test_painted_root_criterion():
    assert bdcoideal.painted_root_criterion("E7", [1, 2, 3, 4, 5, 6])
    assert not bdcoideal.painted_root_criterion("B3", [1, 2])


def test_bad_input_raises():
    with pytest.raises(bdcoideal.InputError):
        bdcoideal.roots("Z9")
    with pytest.raises(bdcoideal.InputError):
        bdcoideal.check({"type": "A2", "sigma": {"shape": "varsigma"}, "lambda": {"1,2": 1.5}})
