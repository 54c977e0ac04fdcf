import json
import os
import pathlib

import pytest

import soa

FIXTURES = pathlib.Path(os.environ.get("SOA_FIXTURE_DIR", pathlib.Path(__file__).parents[2] / "fixtures"))


def load(name):
    return json.loads((FIXTURES / name).read_text())


def test_maps():
    f = soa.FiniteMap(3, 2, [0, 1, 1])
    g = soa.FiniteMap(2, 2, [1, 0])
    assert soa.compose(g, f).table == [1, 0, 0]
    assert f.is_surjective() and not f.is_injective()
    assert soa.is_iso(f) is None
    inv = soa.is_iso(g)
    assert soa.compose(inv, g) == soa.identity(2)
    assert f(2) == 1
    with pytest.raises(IndexError):
        f(3)
    with pytest.raises(soa.SoaError):
        soa.FiniteMap(2, 2, [0, 2])


def test_validate():
    assert soa.validate(load("gen_abc.json")) == []
    broken = load("gen_abc.json")
    del broken["vcomp"]
    (message,) = soa.validate(broken)
    assert "vertical-composition" in message
    with pytest.raises(soa.ParseError):
        soa.validate("{")


def test_factor_verify_lift():
    pres = load("gen_split_epi.json")
    cert = soa.factor(pres, load("map_split_epi.json"))
    assert cert["stage"] == 1
    assert cert["R"]["map"]["table"] == [0, 1, 1, 0, 1]
    report = soa.verify(pres, cert)
    assert report["ok"], report["failures"]

    filler = soa.lift(pres, cert, load("problem_split_epi.json"))
    assert filler.dom == 1 and filler.cod == 5
    assert cert["R"]["map"]["table"][filler(0)] == 1

    cert["beta0"]["table"][0] = (cert["beta0"]["table"][0] + 1) % cert["beta0"]["cod"]
    assert not soa.verify(pres, cert)["ok"]
    assert soa.verify(pres, "{")["failures"][0]["check"] == "well-formed"


def test_special_mode_and_errors():
    pres = load("gen_abc.json")
    cert = soa.factor(pres, load("map_abc.json"), mode="special")
    assert cert["mode"] == "special"
    assert soa.verify(pres, cert)["ok"]
    with pytest.raises(soa.NotStabilised):
        soa.factor(load("gen_growth.json"), load("map_growth.json"), max_stage=3)
    with pytest.raises(soa.SizeBudgetExceeded):
        soa.factor(pres, soa.FiniteMap(7, 1, [0] * 7))
    with pytest.raises(soa.InvalidPresentation):
        soa.factor(load("gen_growth.json"), load("map_growth.json"), mode="special")


def test_kappa():
    identity = {"dom": 1, "cod": 1, "table": [0]}
    report = soa.kappa(load("gen_split_epi.json"), identity, identity)
    assert report["ok"]
    assert report["counts"]["squares"] == report["counts"]["liftings"]
