import os
from fractions import Fraction
from pathlib import Path

import pytest

import g2t

DATA = Path(os.environ.get("G2T_DATA", Path(__file__).resolve().parents[2] / "data"))


def test_sequences():
    assert g2t.bn_sequence(9) == [1, 0, 1, 1, 4, 10, 35, 120, 455, 1792]
    assert g2t.an_sequence(9) == [1, 0, 1, 1, 2, 5, 15, 50, 181, 697]
    assert g2t.bn_exact(12) == 140833
    assert isinstance(g2t.bn_exact(200), int)
    assert g2t.bn_exact(200) > 2**400


def test_exact_limit():
    with pytest.raises(g2t.ExactLimitError):
        g2t.bn_exact(30, exact_limit=20)


def test_scaled_and_saddle():
    assert g2t.bn_scaled(9) == pytest.approx(1792 / 7**9, rel=1e-14)
    value, _grid = g2t.saddle(40)
    assert value == pytest.approx(g2t.bn_scaled(40), rel=1e-6)


def test_kappa():
    k = g2t.kappa(10)
    assert k[0] == Fraction(4117715, 864)
    assert k[1] == Fraction(-28824005, 216)
    assert len(k) == 4


def test_constants():
    recs = {r["name"]: r for r in g2t.constants(60)}
    assert set(recs) == {"rho", "lambda", "K", "M", "y_prime", "A_prime"}
    assert all(r["certified"] for r in recs.values())
    assert recs["rho"]["value"][0].startswith("6.8211")


def test_expansion():
    e = g2t.expansion(60)
    assert e["gamma"][0] == pytest.approx(1 / 7, rel=1e-15)
    assert len(e["eta"]) == 8
    assert float(e["M"][0]) == pytest.approx(1720.99864009299, rel=1e-12)


def test_criterion():
    cat = g2t.analyze_spec((DATA / "catalan.spec").read_text())
    assert cat["branch"] == "strict"
    assert float(cat["tau"][0]) == pytest.approx(0.5, abs=1e-30)
    ex = g2t.analyze_spec((DATA / "example2.spec").read_text())
    assert ex["branch"] == "sharp"
    assert ex["boundary_root"]
    with pytest.raises(g2t.SpecParseError):
        g2t.analyze_spec("kind: nonsense\n")
    with pytest.raises(g2t.InvariantViolation):
        g2t.analyze_spec("kind: coefficient-list\ncoefficients: 1 -1 2\n")
