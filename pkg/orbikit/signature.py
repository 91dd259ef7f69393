from orbikit.models import NoMirrors, Signature, UnsupportedSignature


def parse_signature(text: str) -> Signature:
    return Signature.from_text(text)


def format_signature(sig: Signature) -> str:
    return str(sig)


def double_mirrors(sig: Signature) -> Signature:
    """
    Closed orientable orbifold obtained by gluing two copies of `sig` along
    the mirror locus. Interior cones appear twice, each corner becomes a cone
    of the same order.
    """
    if not sig.orientable:
        raise UnsupportedSignature(
            message=f"Doubling is not supported for non-orientable base: {sig}")
    if sig.is_closed:
        raise NoMirrors(message=f"{sig} has no mirrors to double across")

    return Signature(
        orientable=True,
        genus=2 * sig.genus + len(sig.boundary) - 1,
        cone_points=sig.cone_points * 2 + sig.corner_points
    )
