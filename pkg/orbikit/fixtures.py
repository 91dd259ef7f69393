from typing import Callable, Dict, NamedTuple
from orbikit.models import ActionSpec, Signature, SimplicialSurface
from orbikit.surfaces import connected_sum, grid_torus, octahedron


def _surface(triangles):
    vertices = sorted({v for t in triangles for v in t})
    return SimplicialSurface(vertices=tuple(vertices), triangles=tuple(triangles))


# Octahedron
AXES = "xyz"


def octahedron_surface() -> SimplicialSurface:
    return _surface(octahedron())


def signed_permutation(images):
    """Vertex map of the octahedron induced by a signed permutation of the axes, e.g. {"x": "+y"}."""
    mapping = {}
    for axis in AXES:
        target = images.get(axis, "+" + axis)
        for sign in "+-":
            flipped = target[0] if sign == "+" else ("-" if target[0] == "+" else "+")
            mapping[axis + sign] = target[1] + flipped
    return mapping


QUARTER_TURN_Z = signed_permutation({"x": "+y", "y": "-x"})
THIRD_TURN = signed_permutation({"x": "+y", "y": "+z", "z": "+x"})
HALF_TURN_Z = signed_permutation({"x": "-x", "y": "-y"})
REFLECTION_Z = signed_permutation({"z": "-z"})
ANTIPODAL = signed_permutation({"x": "-x", "y": "-y", "z": "-z"})


# Icosahedron
def icosahedron_surface() -> SimplicialSurface:
    triangles = []
    for i in range(5):
        j = (i + 1) % 5
        triangles += [
            ("T", f"u{i}", f"u{j}"),
            (f"u{i}", f"l{i}", f"u{j}"),
            (f"u{j}", f"l{i}", f"l{j}"),
            ("B", f"l{j}", f"l{i}")
        ]
    return _surface(triangles)


def icosahedron_fifth_turn():
    mapping = {"T": "T", "B": "B"}
    for i in range(5):
        mapping[f"u{i}"] = f"u{(i + 1) % 5}"
        mapping[f"l{i}"] = f"l{(i + 1) % 5}"
    return mapping


# Flat torus: n x n squares, each cut into four triangles around its center
def flat_torus_surface(n=4) -> SimplicialSurface:
    triangles = []
    for i in range(n):
        for j in range(n):
            corners = [_corner(n, i, j), _corner(n, i + 1, j),
                       _corner(n, i + 1, j + 1), _corner(n, i, j + 1)]
            center = _center(n, i, j)
            for k in range(4):
                triangles.append((center, corners[k], corners[(k + 1) % 4]))
    return _surface(triangles)


def _corner(n, i, j):
    return f"p{i % n}.{j % n}"


def _center(n, i, j):
    return f"c{i % n}.{j % n}"


def flat_torus_map(n, corner_map, center_map):
    mapping = {}
    for i in range(n):
        for j in range(n):
            mapping[_corner(n, i, j)] = _corner(n, *corner_map(i, j))
            mapping[_center(n, i, j)] = _center(n, *center_map(i, j))
    return mapping


def torus_quarter_turn(n=4):
    return flat_torus_map(n, lambda i, j: (-j, i), lambda i, j: (-j - 1, i))


def torus_half_turn(n=4):
    return flat_torus_map(n, lambda i, j: (-i, -j), lambda i, j: (-i - 1, -j - 1))


def torus_translation(n=4, di=1, dj=0):
    def shift(i, j):
        return i + di, j + dj
    return flat_torus_map(n, shift, shift)


def torus_reflection(n=4, axis="i"):
    if axis == "i":
        return flat_torus_map(n, lambda i, j: (-i, j), lambda i, j: (-i - 1, j))
    return flat_torus_map(n, lambda i, j: (i, -j), lambda i, j: (i, -j - 1))


# Genus two: two 3x3 tori joined along a triangle
GLUED = {(0, 0): (0, 0), (1, 0): (1, 1), (1, 1): (1, 0)}


def genus_two_surface() -> SimplicialSurface:
    a = grid_torus("a.")
    b = grid_torus("b.")
    return _surface(connected_sum(a, a[0], b, b[0]))


def genus_two_swap():
    """
    Exchanges the two handles through (i, j) -> (i, i - j), which fixes the
    gluing triangle pointwise, so the neck circle becomes a mirror.
    """
    def name(side, i, j):
        i, j = i % 3, j % 3
        if side == "b" and (i, j) in GLUED:
            return "a.{}.{}".format(*GLUED[(i, j)])
        return f"{side}.{i}.{j}"

    mapping = {}
    for i in range(3):
        for j in range(3):
            if (i, j) not in GLUED:
                mapping[name("b", i, j)] = name("a", i, i - j)
            mapping[name("a", i, j)] = name("b", i, i - j)
    return mapping


class Fixture(NamedTuple):
    build: Callable[[], ActionSpec]
    signature: Signature


def _fixture(surface_factory, *generator_factories, signature):
    def build():
        return ActionSpec.from_mappings(
            surface_factory(), [g() for g in generator_factories])
    return Fixture(build, Signature.from_text(signature))


FIXTURES: Dict[str, Fixture] = {
    "octahedron-identity": _fixture(
        octahedron_surface, signature="O0()"),
    "octahedron-rotation-z4": _fixture(
        octahedron_surface, lambda: QUARTER_TURN_Z, signature="O0(4,4)"),
    "octahedron-half-turn": _fixture(
        octahedron_surface, lambda: HALF_TURN_Z, signature="O0(2,2)"),
    "octahedron-rotations": _fixture(
        octahedron_surface, lambda: QUARTER_TURN_Z, lambda: THIRD_TURN,
        signature="O0(4,3,2)"),
    "octahedron-reflection": _fixture(
        octahedron_surface, lambda: REFLECTION_Z, signature="O0()*()"),
    "octahedron-antipodal": _fixture(
        octahedron_surface, lambda: ANTIPODAL, signature="N1()"),
    "octahedron-full": _fixture(
        octahedron_surface, lambda: QUARTER_TURN_Z, lambda: THIRD_TURN,
        lambda: REFLECTION_Z, signature="O0()*(4,3,2)"),
    "icosahedron-z5": _fixture(
        icosahedron_surface, icosahedron_fifth_turn, signature="O0(5,5)"),
    "torus-half-turn": _fixture(
        flat_torus_surface, torus_half_turn, signature="O0(2,2,2,2)"),
    "torus-quarter-turn": _fixture(
        flat_torus_surface, torus_quarter_turn, signature="O0(4,4,2)"),
    "torus-translations": _fixture(
        flat_torus_surface, torus_translation, lambda: torus_translation(dj=1, di=0),
        signature="O1()"),
    "torus-reflection": _fixture(
        flat_torus_surface, torus_reflection, signature="O0()*()*()"),
    "torus-billiard": _fixture(
        flat_torus_surface, torus_reflection, lambda: torus_reflection(axis="j"),
        signature="O0()*(2,2,2,2)"),
    "genus2-swap": _fixture(
        genus_two_surface, genus_two_swap, signature="O1()*()"),
}


def fixture_names():
    return sorted(FIXTURES)


def load_fixture(name: str) -> ActionSpec:
    return FIXTURES[name].build()
