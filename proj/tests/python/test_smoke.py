import math

import pytest

import cmheight


def test_height_two_methods_agree():
    a = cmheight.height("0;0;0;-25;0", "-4,6")
    b = cmheight.height("0;0;0;-25;0", "-4,6", method="local-sum")
    assert a["lower"] <= b["upper"] and b["lower"] <= a["upper"]
    assert abs(a["lower"] - 0.9497410862) < 1e-8


def test_torsion_height_zero():
    h = cmheight.height("0;0;0;-1;0", "0,0")
    assert h["torsion_detected"]
    assert h["lower"] <= 0 <= h["upper"]


def test_quadratic_point():
    h = cmheight.height("0;0;0;-1;0", "2,(0,1)", field="Q(sqrt,6)")
    assert h["lower"] > 0


def test_bound_values():
    b = cmheight.bound(1, 1728)
    # (log 2 + 22/3 + log 1728) / 6
    assert math.isclose(b["C1"], (math.log(2) + 22 / 3 + math.log(1728)) / 6, rel_tol=1e-14)
    assert b["p"] == "29"
    assert math.isclose(b["main_bound"], 2.0 ** -60 * 1728.0 ** -4, rel_tol=1e-12)


def test_certify_and_torsion():
    c = cmheight.certify("j=1728", "0,0")
    assert c["verdict"] == "torsion_confirmed"
    assert cmheight.certify("0;0;0;-25;0", "-4,6")["verdict"] == "consistent_nontorsion"
    assert not cmheight.torsion("0;0;0;-25;0", "-4,6")["torsion"]


def test_galois_and_chain():
    g = cmheight.galois(-4, 3)
    assert g["unit_count"] == 8
    assert 2 < g["g2"] - g["g1"] < 42
    ch = cmheight.chain(1, 0)
    assert ch["p"] == "11"
    assert len(ch["links"]) == 11


def test_sampling_and_sweep():
    pts = cmheight.sample_points("0;0;0;-1;0", num_bound=2, den_bound=1)
    assert {"field": "Q(sqrt,6)", "point": pts[-1]["point"]} == pts[-1]
    r = cmheight.sweep(curves=["j=0"], num_bound=2, den_bound=1)
    assert r["exit_code"] == 0
    assert r["csv"].count("\n") == 6
    assert cmheight.sweep(curves=[])["csv"] == "curve,j,field,x,hhat_mid,hhat_rad,main_bound,verdict\n"


def test_errors():
    with pytest.raises(ValueError):
        cmheight.certify("0;0;0;1;1", "0,1")
    with pytest.raises(ValueError):
        cmheight.sweep(tolerance=0)
