from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Dict, List
from orbikit.models import (
    Signature, StrataEntry, StrataPoset, WeightedProjectiveSpace, WrongDimension
)


def wps_strata(w: WeightedProjectiveSpace) -> StrataPoset:
    strata = []
    indices = range(len(w.weights))
    for size in range(1, len(w.weights) + 1):
        for subset in combinations(indices, size):
            l = reduce(gcd, (w.weights[i] for i in subset))
            strata.append(StrataEntry(indices=subset, gcd=l, singular=l > 1))
    return StrataPoset(weights=w.weights, strata=tuple(strata))


def wps_chart_groups(w: WeightedProjectiveSpace) -> List[int]:
    return list(w.weights)


def wps_euler(w: WeightedProjectiveSpace) -> Fraction:
    return sum((Fraction(1, l) for l in w.weights), Fraction(0))


def wps_isotropy_loci(poset: StrataPoset) -> Dict[int, int]:
    """
    χ_c of the locus of points whose isotropy group is exactly Z_l, for every
    l that occurs.

    The points with isotropy divisible by l form the closed stratum on the
    coordinates whose weight l divides, itself a weighted projective space with
    as many cells as coordinates. Open loci come from peeling off the closed
    loci of proper multiples, largest first.
    """
    top = max(poset.weights)
    closed = {}
    for l in range(1, top + 1):
        support = tuple(e.indices[0] for e in poset.strata
                        if len(e.indices) == 1 and e.gcd % l == 0)
        closed[l] = len(support)
    loci = {}
    for l in range(top, 0, -1):
        loci[l] = closed[l] - sum(loci[m] for m in range(2 * l, top + 1, l))
    return {l: chi for l, chi in loci.items() if chi}


def wps_euler_from_strata(poset: StrataPoset) -> Fraction:
    return sum((Fraction(chi, l) for l, chi in wps_isotropy_loci(poset).items()), Fraction(0))


def wps_football(w: WeightedProjectiveSpace) -> Signature:
    if w.n != 1:
        raise WrongDimension(
            message=f"football needs exactly two weights, got {len(w.weights)}")
    return Signature(orientable=True, genus=0,
                     cone_points=tuple(l for l in w.weights if l > 1))
