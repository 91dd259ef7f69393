import logging
from typing import Union
from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group
from orbikit.models import (
    ChiMismatch, GeometryClass, GroupPresentation, NotSpherical, Signature,
    UnsupportedSignature
)
from orbikit.euler import euler_closed_form
from orbikit.signature import double_mirrors

logger = logging.getLogger(__name__)

EXCEEDED = "infinite-or-exceeded"


def _inverse(symbol):
    return symbol[:-3] if symbol.endswith("^-1") else f"{symbol}^-1"


def presentation(sig: Signature) -> GroupPresentation:
    if not sig.orientable or not sig.is_closed:
        raise UnsupportedSignature(
            message=f"Presentations are only available for closed orientable "
                    f"signatures: {sig}")

    handles = [(f"a{i}", f"b{i}") for i in range(1, sig.genus + 1)]
    cones = [f"x{j}" for j in range(1, len(sig.cone_points) + 1)]
    generators = [g for pair in handles for g in pair] + cones

    relators = [(x,) * p for x, p in zip(cones, sig.cone_points)]
    product = list(cones)
    for a, b in handles:
        product += [a, b, _inverse(a), _inverse(b)]
    if product:
        relators.append(tuple(product))
    return GroupPresentation(generators=tuple(generators), relators=tuple(relators))


def _to_free_group(pres: GroupPresentation):
    F, *letters = free_group(",".join(pres.generators))
    by_name = dict(zip(pres.generators, letters))

    def element(word):
        result = F.identity
        for symbol in word:
            if symbol.endswith("^-1"):
                result = result * by_name[symbol[:-3]] ** -1
            else:
                result = result * by_name[symbol]
        return result

    return F, [element(r) for r in pres.relators]


def _to_word(element):
    word = []
    for letter, exponent in element.array_form:
        symbol = str(letter)
        word += [symbol if exponent > 0 else _inverse(symbol)] * abs(exponent)
    return tuple(word)


def simplify_presentation(pres: GroupPresentation) -> GroupPresentation:
    """Freely and cyclically reduces every relator and drops trivial ones."""
    if not pres.generators:
        return GroupPresentation()
    _, elements = _to_free_group(pres)
    relators = []
    for element in elements:
        reduced = element.identity_cyclic_reduction()
        if not reduced.is_identity:
            relators.append(_to_word(reduced))
    return GroupPresentation(generators=pres.generators, relators=tuple(relators))


def group_order(pres: GroupPresentation, max_cosets: int = 10000) -> Union[int, str]:
    pres = simplify_presentation(pres)
    if not pres.generators:
        return 1
    F, relators = _to_free_group(pres)
    group = FpGroup(F, relators)
    try:
        table = coset_enumeration_r(group, [], max_cosets=max_cosets)
    except ValueError as ex:
        logger.debug(f"Coset enumeration stopped for {pres}: {ex}")
        return EXCEEDED
    order = len(table.omega)
    logger.debug(f"Coset enumeration of {pres} closed with {order} cosets")
    return order


def _closed_reduction(sig: Signature) -> Signature:
    if not sig.orientable:
        raise UnsupportedSignature(
            message=f"Non-orientable base is not supported: {sig}")
    return sig if sig.is_closed else double_mirrors(sig)


def is_good(sig: Signature) -> bool:
    target = _closed_reduction(sig)
    if target.genus > 0:
        return True
    cones = target.cone_points
    if len(cones) == 1:
        return False
    if len(cones) == 2 and cones[0] != cones[1]:
        return False
    return True


def classify(sig: Signature) -> GeometryClass:
    if not is_good(sig):
        return GeometryClass.Bad
    chi = euler_closed_form(sig)
    if chi > 0:
        return GeometryClass.Spherical
    if chi == 0:
        return GeometryClass.Euclidean
    return GeometryClass.Hyperbolic


def spherical_group_order(sig: Signature) -> int:
    geometry = classify(sig)
    if geometry != GeometryClass.Spherical:
        raise NotSpherical(message=f"{sig} is {geometry.value}, not Spherical")
    order = 2 / euler_closed_form(sig)
    if order.denominator != 1:
        raise ChiMismatch(
            message=f"2/chi = {order} is not an integer for {sig}")
    return int(order)
