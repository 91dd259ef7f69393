import logging
from collections import Counter
from itertools import combinations_with_replacement
from typing import List, Tuple
from sympy import divisors
from sympy.combinatorics.permutations import Permutation
from orbikit.models import (
    Check, ClosedOrbifold, CoveringCertificate, Fiber, LocalCone,
    MalformedCertificate, NotASubgroup, Report
)
from orbikit.euler import euler_closed_form
from orbikit.quotient import (
    CLOSURE_BOUND, RegularQuotient, SimplicialAction, mapping_of, subdivide,
    check_regular, extract_signature, validate_action
)
from orbikit.surfaces import surface_euler

logger = logging.getLogger(__name__)


def _check_structure(cert: CoveringCertificate):
    if cert.degree < 1:
        raise MalformedCertificate(message=f"degree must be positive, got {cert.degree}")
    if isinstance(cert.base, ClosedOrbifold) != isinstance(cert.cover, ClosedOrbifold):
        raise MalformedCertificate(
            message=f"base kind '{cert.base.kind}' does not match cover kind "
                    f"'{cert.cover.kind}'")
    for fiber in cert.fibers:
        if not fiber.preimages:
            raise MalformedCertificate(message=f"fiber over '{fiber.point}' is empty")
        for order in fiber.preimages:
            if order < 1 or fiber.order % order:
                raise MalformedCertificate(
                    message=f"preimage order {order} does not divide {fiber.order} "
                            f"at '{fiber.point}'")

    claimed = sorted(f.order for f in cert.fibers)
    if isinstance(cert.base, ClosedOrbifold):
        expected = sorted(cert.base.signature.singular_orders)
    else:
        expected = [cert.base.order]
    if claimed != expected:
        raise MalformedCertificate(
            message=f"fibers are given over points of orders {claimed}, base has "
                    f"singular points of orders {expected}")


def verify_certificate(cert: CoveringCertificate) -> Report:
    _check_structure(cert)
    checks = []
    for fiber in cert.fibers:
        total = sum(fiber.order // order for order in fiber.preimages)
        checks.append(Check(
            name=f"fiber-sum {fiber.point}".strip(),
            passed=total == cert.degree,
            detail=f"sum |G|/|L| = {total}, degree {cert.degree}"))

    if isinstance(cert.base, LocalCone):
        expected = (cert.cover.order,) if isinstance(cert.cover, LocalCone) else (1,)
        preimages = cert.fibers[0].preimages
        checks.append(Check(
            name="local-cover",
            passed=tuple(preimages) == expected,
            detail=f"preimages {list(preimages)}, cover local order {expected[0]}"))
    else:
        checks.append(_cone_multiset_check(cert))
        base_chi = euler_closed_form(cert.base.signature)
        cover_chi = euler_closed_form(cert.cover.signature)
        checks.append(Check(
            name="euler",
            passed=cover_chi == cert.degree * base_chi,
            detail=f"chi(cover) = {cover_chi}, degree * chi(base) = "
                   f"{cert.degree * base_chi}"))

    report = Report.from_checks(checks)
    logger.debug(f"Certificate verified: {report.passed}")
    return report


def _cone_multiset_check(cert):
    if not cert.base.signature.is_closed:
        # rotation and reflection preimages of equal order are not told apart by fiber data
        return Check(name="cone-multiset", passed=True,
                     detail="skipped: base has mirrors")
    implied = Counter(o for f in cert.fibers for o in f.preimages if o > 1)
    actual = Counter(cert.cover.signature.cone_points)
    return Check(
        name="cone-multiset",
        passed=implied == actual,
        detail=f"implied {sorted(implied.elements(), reverse=True)}, "
               f"cover {list(cert.cover.signature.cone_points)}")


def enumerate_fiber_data(n: int, r: int) -> List[Tuple[int, ...]]:
    """All multisets of divisors d of n with sum n/d == r, ordered by length then entries."""
    if n < 2 or r < 1:
        raise MalformedCertificate(message=f"need n >= 2 and r >= 1, got n={n}, r={r}")
    found = []
    for length in range(1, r + 1):
        for combo in combinations_with_replacement(divisors(n), length):
            if sum(n // d for d in combo) == r:
                found.append(tuple(combo))
    return sorted(found, key=lambda c: (len(c), c))


def _subgroup_mappings(action: SimplicialAction, subgroup_generators):
    mappings = [mapping_of(g) for g in subgroup_generators]
    vertices = action.surface.vertices
    index = {v: i for i, v in enumerate(vertices)}
    for mapping in mappings:
        if set(mapping) != set(index) or set(mapping.values()) != set(index):
            raise NotASubgroup(message="subgroup generator is not a vertex bijection")
        perm = Permutation([index[mapping[v]] for v in vertices])
        if not action.group.contains(perm):
            raise NotASubgroup(
                message="subgroup generator is not an element of the acting group")
    return mappings


def certificate_from_quotients(action: SimplicialAction, subgroup_generators,
                               subdivisions: int = 2,
                               closure_bound: int = CLOSURE_BOUND) -> CoveringCertificate:
    """Certificate for the covering M//H -> M//G induced by a subgroup H of G."""
    sub_mappings = _subgroup_mappings(action, subgroup_generators)
    k = len(action.generators)
    surface, transported = subdivide(
        action.surface, list(action.generators) + sub_mappings, subdivisions)
    regular_g = validate_action(surface, transported[:k], closure_bound)
    regular_h = validate_action(surface, transported[k:], closure_bound)
    check_regular(regular_g)

    chi = surface_euler(action.surface)
    base = RegularQuotient(regular_g, chi_cover=chi)
    cover = RegularQuotient(regular_h, chi_cover=chi)
    base_sig = extract_signature(base.result())
    cover_sig = extract_signature(cover.result())

    fibers = []
    for cell_id, vertex, order in base.singular_vertices():
        remaining = set(base.table.orbit(vertex))
        preimages = []
        while remaining:
            w = min(remaining)
            remaining -= {h[w] for h in regular_h.elements}
            preimages.append(sum(1 for h in regular_h.elements if h[w] == w))
        fibers.append(Fiber(point=cell_id, order=order,
                            preimages=tuple(sorted(preimages))))

    degree = regular_g.order // regular_h.order
    logger.debug(f"Covering {cover_sig} -> {base_sig} of degree {degree}")
    return CoveringCertificate(
        base=ClosedOrbifold(signature=base_sig),
        cover=ClosedOrbifold(signature=cover_sig),
        degree=degree,
        fibers=tuple(fibers))
