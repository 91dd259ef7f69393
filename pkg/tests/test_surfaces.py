import sys
import os
sys.path.append(os.pardir)
import pytest
from orbikit.models import NotASurface, SimplicialSurface
from orbikit.surfaces import (
    barycentric_surface, connected_sum, grid_torus, link_cycle, octahedron,
    orient_surface, preserves_orientation, projective_plane, stars,
    surface_euler, validate_surface
)
from orbikit.fixtures import (
    ANTIPODAL, QUARTER_TURN_Z, REFLECTION_Z, flat_torus_surface,
    genus_two_surface, icosahedron_surface, octahedron_surface
)


def surface(triangles):
    vertices = sorted({v for t in triangles for v in t})
    return SimplicialSurface(vertices=tuple(vertices), triangles=tuple(triangles))


def test_euler_of_building_blocks():
    assert surface_euler(validate_surface(octahedron_surface())) == 2
    assert surface_euler(validate_surface(icosahedron_surface())) == 2
    assert surface_euler(validate_surface(surface(grid_torus("t.")))) == 0
    assert surface_euler(validate_surface(flat_torus_surface())) == 0
    assert surface_euler(validate_surface(surface(projective_plane("r.")))) == 1
    assert surface_euler(validate_surface(genus_two_surface())) == -2


def test_connected_sum():
    a = octahedron("a.")
    b = projective_plane("b.")
    joined = surface(connected_sum(a, a[0], b, b[0]))
    validate_surface(joined)
    assert surface_euler(joined) == 2 + 1 - 2
    assert orient_surface(joined.triangles) is None

    c = grid_torus("c.")
    torus_sum = connected_sum(a, a[0], c, c[0])
    assert orient_surface(torus_sum) is not None


def test_not_a_surface():
    with pytest.raises(NotASurface):
        # boundary edges
        validate_surface(surface(octahedron()[1:]))
    with pytest.raises(NotASurface):
        validate_surface(surface(octahedron() + [("x+", "y+", "q")]))
    with pytest.raises(NotASurface):
        validate_surface(surface(octahedron("a.") + octahedron("b.")))
    with pytest.raises(NotASurface):
        validate_surface(SimplicialSurface(vertices=("a", "b", "c"), triangles=(("a", "a", "b"),)))
    with pytest.raises(NotASurface):
        validate_surface(SimplicialSurface(
            vertices=tuple(sorted({v for t in octahedron() for v in t})) + ("lonely",),
            triangles=tuple(octahedron())))


def test_pinched_vertex():
    pinched = octahedron("a.") + [tuple("a.x+" if v == "b.x+" else v for v in t)
                                  for t in octahedron("b.")]
    with pytest.raises(NotASurface) as exc:
        validate_surface(surface(pinched))
    assert "a.x+" in str(exc.value)


def test_link_cycle():
    triangles = octahedron()
    cycle = link_cycle(stars(triangles)["z+"], "z+")
    assert sorted(cycle) == ["x+", "x-", "y+", "y-"]
    assert cycle[0] == "x+"
    assert cycle[2] == "x-"


def test_orientation():
    oriented = orient_surface(octahedron())
    assert oriented is not None
    assert orient_surface(projective_plane()) is None
    assert preserves_orientation(oriented, QUARTER_TURN_Z)
    assert not preserves_orientation(oriented, REFLECTION_Z)
    assert not preserves_orientation(oriented, ANTIPODAL)


def test_barycentric_surface():
    base = octahedron_surface()
    subdivided, (turn,) = barycentric_surface(base, [QUARTER_TURN_Z])
    validate_surface(subdivided)
    assert len(subdivided.vertices) == 6 + 12 + 8
    assert len(subdivided.triangles) == 6 * 8
    assert surface_euler(subdivided) == 2
    assert turn["z+"] == "z+"
    assert turn["[x+ z+]"] == "[y+ z+]"
    assert sorted(turn.values()) == sorted(subdivided.vertices)
    assert orient_surface(subdivided.triangles) is not None


def test_orientation_per_component():
    two_spheres = octahedron("a.") + octahedron("b.")
    oriented = orient_surface(two_spheres)
    assert oriented is not None
    assert [frozenset(t) for t in oriented] == [frozenset(t) for t in two_spheres]
    assert orient_surface(octahedron("a.") + projective_plane("b.")) is None


def test_link_cycle_errors():
    with pytest.raises(NotASurface):
        # open fan around the vertex
        link_cycle(octahedron()[:3], "x+")
    with pytest.raises(NotASurface):
        link_cycle([], "x+")
    cycle = link_cycle(stars(projective_plane())["1"], "1")
    assert cycle[0] == "2"
    assert sorted(cycle) == ["2", "3", "4", "5", "6"]
