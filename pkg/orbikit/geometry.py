import logging
from collections import Counter
from fractions import Fraction
from typing import List
import numpy as np
from scipy.integrate import simpson
from orbikit.models import (
    BadIntervals, BadOrbifold, Check, FlatIndeterminate, GeometryClass,
    InvalidProfile, OrderMismatch, Report, Signature, SignMismatch,
    SpindleMetric, SpindleReport, UnsupportedSignature, VectorFieldZero
)
from orbikit.euler import euler_closed_form
from orbikit.fundamental import classify

logger = logging.getLogger(__name__)


def _step(profile, t):
    """s(t), s'(t), s''(t) on [0, 1]."""
    if profile == "linear":
        return t, np.ones_like(t), np.zeros_like(t)
    if profile == "cosine":
        return ((1 - np.cos(np.pi * t)) / 2,
                np.pi / 2 * np.sin(np.pi * t),
                np.pi ** 2 / 2 * np.cos(np.pi * t))
    return 3 * t ** 2 - 2 * t ** 3, 6 * t - 6 * t ** 2, 6 - 12 * t


def spindle_profile(metric: SpindleMetric, r):
    """f and f'' sampled at r."""
    c = 1 / metric.q - 1 / metric.p
    a = metric.amplitude
    s, ds, dds = _step(metric.profile, r / np.pi)
    g = 1 / metric.p + c * s + a * np.sin(r) ** 2
    dg = c * ds / np.pi + a * np.sin(2 * r)
    ddg = c * dds / np.pi ** 2 + 2 * a * np.cos(2 * r)
    f = np.sin(r) * g
    ddf = -np.sin(r) * g + 2 * np.cos(r) * dg + np.sin(r) * ddg
    return f, ddf


def spindle_gauss_bonnet(p: int, q: int, intervals: int = 4096,
                         profile: str = "smoothstep", amplitude: float = 0.0) -> SpindleReport:
    if intervals < 4 or intervals % 2:
        raise BadIntervals(
            message=f"Simpson quadrature needs an even number >= 4 of intervals, "
                    f"got {intervals}")
    metric = SpindleMetric(p=p, q=q, profile=profile, amplitude=amplitude)
    r = np.linspace(0.0, np.pi, intervals + 1)
    h = np.pi / intervals
    f, ddf = spindle_profile(metric, r)
    if np.any(f[1:-1] <= 0):
        raise InvalidProfile(
            message=f"profile {profile} with amplitude {amplitude} is not positive "
                    f"on (0, pi)")

    total_curvature = 2 * np.pi * simpson(-ddf, dx=h)
    area = 2 * np.pi * simpson(f, dx=h)
    target = 2 * np.pi * (1 / p + 1 / q)
    rel_error = abs(total_curvature - target) / abs(target)
    logger.debug(f"Spindle ({p},{q}) {profile}: {intervals} intervals, "
                 f"relative error {rel_error:.3e}")
    return SpindleReport(total_curvature=float(total_curvature), area=float(area),
                         target=target, rel_error=float(rel_error))


def poincare_hopf_check(sig: Signature, zeros: List[VectorFieldZero]) -> Report:
    if not sig.is_closed:
        raise UnsupportedSignature(
            message=f"Poincare-Hopf check needs a closed signature: {sig}")
    available = Counter(sig.cone_points)
    claimed = Counter(z.local_order for z in zeros if z.local_order > 1)
    for order, count in sorted(claimed.items()):
        if count > available[order]:
            raise OrderMismatch(
                message=f"{count} zero(s) of local order {order}, but {sig} has "
                        f"{available[order]} cone point(s) of that order")

    index_sum = sum((Fraction(z.lift_index, z.local_order) for z in zeros), Fraction(0))
    chi = euler_closed_form(sig)
    return Report.from_checks([Check(
        name="index-sum",
        passed=index_sum == chi,
        detail=f"sum of indices {index_sum}, chi {chi}")])


def constant_curvature_area(sig: Signature, curvature) -> Fraction:
    """Area / pi of a metric of constant curvature K, from K * area = 2 pi chi."""
    curvature = Fraction(curvature)
    if classify(sig) == GeometryClass.Bad:
        raise BadOrbifold(message=f"{sig} is bad and carries no constant curvature metric")
    chi = euler_closed_form(sig)
    if curvature == 0:
        if chi == 0:
            raise FlatIndeterminate(
                message=f"{sig} is flat; the area of a flat metric is not determined")
        raise SignMismatch(message=f"K = 0 needs chi = 0, {sig} has chi {chi}")
    if (curvature > 0) != (chi > 0) or chi == 0:
        raise SignMismatch(
            message=f"curvature {curvature} and chi {chi} of {sig} differ in sign")
    return 2 * chi / curvature
