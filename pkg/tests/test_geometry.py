import sys
import os
sys.path.append(os.pardir)
from fractions import Fraction
from math import pi
import numpy as np
import pytest
from orbikit.models import (
    BadIntervals, BadOrbifold, FlatIndeterminate, InvalidProfile, OrderMismatch,
    Signature, SignMismatch, SpindleMetric, UnsupportedSignature, VectorFieldZero
)
from orbikit.euler import euler_closed_form
from orbikit.geometry import (
    constant_curvature_area, poincare_hopf_check, spindle_gauss_bonnet,
    spindle_profile
)


def sig(text):
    return Signature.from_text(text)


def zeros(*pairs):
    return [VectorFieldZero(local_order=o, lift_index=k) for o, k in pairs]


def test_round_sphere():
    report = spindle_gauss_bonnet(1, 1)
    assert report.target == pytest.approx(4 * pi)
    assert report.total_curvature == pytest.approx(4 * pi, rel=1e-6)
    assert report.area == pytest.approx(4 * pi, rel=1e-6)


def test_gauss_bonnet_footballs():
    for p, q in [(1, 1), (2, 3), (3, 4), (5, 5)]:
        report = spindle_gauss_bonnet(p, q, intervals=4096)
        assert report.target == pytest.approx(2 * pi * (1 / p + 1 / q))
        assert report.rel_error <= 1e-6, (p, q)
    football = sig("O0(5,5)")
    assert spindle_gauss_bonnet(5, 5).target == pytest.approx(2 * pi * float(euler_closed_form(football)))


def test_profile_independence():
    reports = [spindle_gauss_bonnet(2, 3, profile=profile, amplitude=amplitude)
               for profile in ("smoothstep", "linear", "cosine")
               for amplitude in (0.0, 0.5)]
    for report in reports:
        assert report.total_curvature == pytest.approx(reports[0].total_curvature, rel=1e-6)
    assert len({round(r.area, 6) for r in reports}) > 1


def test_simpson_convergence():
    coarse = spindle_gauss_bonnet(2, 3, intervals=16)
    fine = spindle_gauss_bonnet(2, 3, intervals=32)
    ratio = (coarse.rel_error * coarse.target) / (fine.rel_error * fine.target)
    assert 8 <= ratio <= 32


def test_profile_endpoints():
    metric = SpindleMetric(p=2, q=3)
    h = 1e-6
    f, _ = spindle_profile(metric, np.array([0.0, h, pi - h, pi]))
    assert f[0] == pytest.approx(0, abs=1e-12)
    assert f[1] / h == pytest.approx(1 / 2, rel=1e-4)
    assert f[2] / h == pytest.approx(1 / 3, rel=1e-4)


def test_gauss_bonnet_errors():
    with pytest.raises(BadIntervals):
        spindle_gauss_bonnet(2, 3, intervals=15)
    with pytest.raises(BadIntervals):
        spindle_gauss_bonnet(2, 3, intervals=2)
    with pytest.raises(InvalidProfile):
        spindle_gauss_bonnet(2, 3, amplitude=-5.0)


def test_poincare_hopf():
    assert poincare_hopf_check(sig("O0(5,5)"), zeros((5, 1), (5, 1))).passed
    assert poincare_hopf_check(sig("O1()"), []).passed
    assert poincare_hopf_check(sig("O0(2,3)"), zeros((2, 1), (3, 1))).passed
    report = poincare_hopf_check(sig("O0(2,3)"), zeros((2, 1)))
    assert not report.passed
    assert report.checks[0].name == "index-sum"
    for p in range(2, 8):
        assert poincare_hopf_check(Signature(cone_points=(p, p)), zeros((p, 1), (p, 1))).passed
    assert poincare_hopf_check(sig("O0()"), zeros((1, 1), (1, 1))).passed
    assert poincare_hopf_check(sig("O2()"), zeros((1, -1), (1, -1))).passed


def test_poincare_hopf_errors():
    with pytest.raises(OrderMismatch):
        poincare_hopf_check(sig("O0(3)"), zeros((5, 1)))
    with pytest.raises(OrderMismatch):
        poincare_hopf_check(sig("O0(3)"), zeros((3, 1), (3, 1)))
    with pytest.raises(UnsupportedSignature):
        poincare_hopf_check(sig("O0()*(2,2)"), [])


def test_constant_curvature_area():
    assert constant_curvature_area(sig("O0()"), 1) == 4
    assert constant_curvature_area(sig("O0(2,3,7)"), -1) == Fraction(1, 21)
    assert constant_curvature_area(sig("O0(2,3,5)"), 1) == Fraction(1, 15)
    assert constant_curvature_area(sig("O2()"), Fraction(-1, 2)) == 8
    assert constant_curvature_area(sig("O0()*()"), 1) == 2


def test_constant_curvature_errors():
    with pytest.raises(SignMismatch):
        constant_curvature_area(sig("O0(2,2,2,2)"), -1)
    with pytest.raises(SignMismatch):
        constant_curvature_area(sig("O0()"), -1)
    with pytest.raises(SignMismatch):
        constant_curvature_area(sig("O2()"), 0)
    with pytest.raises(FlatIndeterminate):
        constant_curvature_area(sig("O1()"), 0)
    with pytest.raises(BadOrbifold):
        constant_curvature_area(sig("O0(5)"), 1)
    with pytest.raises(BadOrbifold):
        constant_curvature_area(sig("O0(2,3)"), 1)
