import sys
import os
sys.path.append(os.pardir)
from fractions import Fraction
import random
from functools import reduce
from itertools import combinations
from math import gcd
import pytest
from orbikit.models import Signature, WeightedProjectiveSpace, WrongDimension
from orbikit.euler import euler_closed_form
from orbikit.wps import (
    wps_chart_groups, wps_euler, wps_euler_from_strata, wps_football, wps_isotropy_loci,
    wps_strata
)


def wps(*weights):
    return WeightedProjectiveSpace(weights=weights)


def test_strata_examples():
    assert wps_strata(wps(1, 1)).singular_entries() == []

    poset = wps_strata(wps(1, 2, 2))
    assert [(s.indices, s.local_group) for s in poset.singular_entries()] == [
        ((1,), "Z2"), ((2,), "Z2"), ((1, 2), "Z2")]

    poset = wps_strata(wps(1, 2, 3))
    assert [(s.indices, s.local_group) for s in poset.singular_entries()] == [
        ((1,), "Z2"), ((2,), "Z3")]
    assert poset.entry((2, 1)).gcd == 1
    assert poset.entry((0, 1, 2)).local_group == "1"


def test_strata_poset():
    poset = wps_strata(wps(2, 3, 4, 6))
    assert len(poset.strata) == 2 ** 4 - 1
    for a, b in combinations(poset.strata, 2):
        lower, upper = (a, b) if len(a.indices) <= len(b.indices) else (b, a)
        if poset.is_below(lower.indices, upper.indices):
            assert lower.gcd % upper.gcd == 0
    assert poset.entry((0, 1, 2, 3)).gcd == 1
    assert not poset.is_below((0, 1), (1, 2))
    with pytest.raises(KeyError):
        poset.entry((4,))


def test_chart_groups():
    assert wps_chart_groups(wps(1, 1)) == [1, 1]
    assert wps_chart_groups(wps(2, 3)) == [2, 3]
    assert wps_chart_groups(wps(1, 2, 3)) == [1, 2, 3]


def test_euler_examples():
    assert wps_euler(wps(1, 1, 1, 1)) == 4
    assert wps_euler(wps(2, 3)) == Fraction(5, 6)
    assert wps_euler(wps(2, 3)) == euler_closed_form(Signature.from_text("O0(3,2)"))
    assert wps_euler(wps(1, 2, 2)) == 2
    assert wps_euler_from_strata(wps_strata(wps(1, 2, 2))) == 2


def test_euler_matches_strata():
    for weights in [(1, 1), (1, 2, 3), (2, 3, 5), (1, 1, 2), (3, 4, 5, 6), (2, 2, 3)]:
        w = wps(*weights)
        assert wps_euler(w) == wps_euler_from_strata(wps_strata(w)), weights

    rng = random.Random(3)
    checked = 0
    while checked < 60:
        weights = [rng.randint(1, 12) for _ in range(rng.randint(2, 5))]
        if reduce(gcd, weights) != 1:
            continue
        w = wps(*weights)
        assert wps_euler(w) == wps_euler_from_strata(wps_strata(w)), weights
        checked += 1


def test_isotropy_loci():
    assert wps_isotropy_loci(wps_strata(wps(1, 1, 1))) == {1: 3}
    # plane minus the singular line, and the line itself
    assert wps_isotropy_loci(wps_strata(wps(1, 2, 2))) == {1: 1, 2: 2}
    assert wps_isotropy_loci(wps_strata(wps(2, 3))) == {2: 1, 3: 1}
    assert wps_isotropy_loci(wps_strata(wps(2, 3, 4, 6))) == {2: 1, 3: 1, 4: 1, 6: 1}


def test_euler_bounds():
    for weights in [(1, 1), (1, 1, 1), (1, 2), (2, 3, 5), (1, 4, 6), (3, 5, 7, 9)]:
        w = wps(*weights)
        chi = wps_euler(w)
        upper = len(weights)
        lower = Fraction(len(weights), max(weights))
        assert lower <= chi <= upper
        all_ones = set(weights) == {1}
        assert (chi == upper) == all_ones
        assert (chi == lower) == (len(set(weights)) == 1)


def test_football():
    assert wps_football(wps(1, 1)) == Signature.from_text("O0()")
    assert wps_football(wps(3, 1)) == Signature.from_text("O0(3)")
    assert wps_football(wps(2, 3)) == Signature.from_text("O0(3,2)")
    with pytest.raises(WrongDimension):
        wps_football(wps(1, 2, 3))


def test_football_euler():
    for p in range(1, 21):
        for q in range(1, 21):
            if gcd(p, q) != 1:
                continue
            w = wps(p, q)
            assert wps_euler(w) == euler_closed_form(wps_football(w)), (p, q)
