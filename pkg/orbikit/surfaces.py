import logging
from collections import defaultdict
from itertools import combinations
import networkx as nx
from orbikit.models import NotASurface, SimplicialSurface

logger = logging.getLogger(__name__)


def edge_key(a, b):
    return (a, b) if a <= b else (b, a)


def surface_edges(triangles):
    incidence = defaultdict(list)
    for t in triangles:
        for a, b in combinations(t, 2):
            incidence[edge_key(a, b)].append(t)
    return incidence


def stars(triangles):
    star = defaultdict(list)
    for t in triangles:
        for v in t:
            star[v].append(t)
    return star


def validate_surface(surface: SimplicialSurface) -> SimplicialSurface:
    names = set(surface.vertices)
    if len(names) != len(surface.vertices):
        raise NotASurface(message="duplicate vertex names")
    if not surface.triangles:
        raise NotASurface(message="surface has no triangles")
    seen = set()
    used = set()
    for t in surface.triangles:
        if len(set(t)) != 3:
            raise NotASurface(message=f"degenerate triangle {t}")
        for v in t:
            if v not in names:
                raise NotASurface(message=f"triangle {t} uses unknown vertex '{v}'")
        key = frozenset(t)
        if key in seen:
            raise NotASurface(message=f"duplicate triangle {t}")
        seen.add(key)
        used.update(t)
    if used != names:
        raise NotASurface(
            message=f"isolated vertices: {sorted(names - used)}")
    for edge, faces in surface_edges(surface.triangles).items():
        if len(faces) != 2:
            raise NotASurface(
                message=f"edge {edge} lies in {len(faces)} triangles, expected 2")
    star = stars(surface.triangles)
    for v in surface.vertices:
        link_cycle(star[v], v)
    if not _is_connected(surface):
        raise NotASurface(message="surface is not connected")
    return surface


def _is_connected(surface):
    graph = nx.Graph()
    graph.add_nodes_from(surface.vertices)
    for t in surface.triangles:
        graph.add_edges_from(combinations(t, 2))
    return nx.is_connected(graph)


def link_cycle(triangles, v):
    """Neighbors of `v` in cyclic order around it. Raises if the link is not a single cycle."""
    link = nx.Graph()
    for t in triangles:
        if v in t:
            link.add_edge(*[w for w in t if w != v])
    if not link or any(d != 2 for _, d in link.degree()):
        raise NotASurface(message=f"link of vertex '{v}' is not a cycle")
    if not nx.is_connected(link):
        raise NotASurface(message=f"link of vertex '{v}' has several components")
    start = min(link)
    cycle = [a for a, _ in nx.find_cycle(link, source=start)]
    i = cycle.index(start)
    return cycle[i:] + cycle[:i]


def surface_euler(surface: SimplicialSurface) -> int:
    edges = surface_edges(surface.triangles)
    return len(surface.vertices) - len(edges) + len(surface.triangles)


def _directed(t):
    return [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]


def _aligned(t, other):
    # `other` or its reverse, whichever runs the shared edge against `t`
    a, b = next((a, b) for a, b in _directed(t) if a in other and b in other)
    return other if (b, a) in _directed(other) else (other[0], other[2], other[1])


def orient_surface(triangles):
    """Coherently reorders every triangle, or returns None for a non-orientable surface."""
    triangles = list(triangles)
    dual = nx.Graph()
    dual.add_nodes_from(triangles)
    for faces in surface_edges(triangles).values():
        if len(faces) == 2:
            dual.add_edge(*faces)
    oriented = {}
    for seed in triangles:
        if seed in oriented:
            continue
        oriented[seed] = seed
        for t, other in nx.bfs_edges(dual, seed):
            oriented[other] = _aligned(oriented[t], other)
    for t, other in dual.edges:
        if _aligned(oriented[t], other) != oriented[other]:
            return None
    return [oriented[t] for t in triangles]


def preserves_orientation(oriented_triangles, mapping) -> bool:
    lookup = {frozenset(t): t for t in oriented_triangles}
    t = oriented_triangles[0]
    image = tuple(mapping[v] for v in t)
    target = lookup[frozenset(image)]
    return set(_directed(image)) == set(_directed(target))


def barycentric_surface(surface: SimplicialSurface, mappings=()):
    """
    Barycentric subdivision of a closed surface.

    Each simplex becomes a vertex named after it (vertices keep their names);
    `mappings` are vertex permutations transported to the subdivision.
    """
    names = {}
    for v in surface.vertices:
        names[frozenset([v])] = v
    edges = sorted(surface_edges(surface.triangles))
    for a, b in edges:
        names[frozenset([a, b])] = f"[{a} {b}]"
    for t in surface.triangles:
        names[frozenset(t)] = "[{}]".format(" ".join(sorted(t)))

    triangles = []
    for t in surface.triangles:
        face = names[frozenset(t)]
        for a, b, c in (t, (t[1], t[2], t[0]), (t[2], t[0], t[1])):
            # flags (vertex < edge < triangle), oriented like the original triangle
            triangles.append((names[frozenset([a])], names[frozenset([a, b])], face))
            triangles.append((names[frozenset([b])], face, names[frozenset([a, b])]))
    vertices = tuple(names[k] for k in sorted(names, key=lambda k: (len(k), sorted(k))))

    transported = []
    for mapping in mappings:
        transported.append({
            name: names[frozenset(mapping[v] for v in simplex)]
            for simplex, name in names.items()
        })
    subdivided = SimplicialSurface(vertices=vertices, triangles=tuple(triangles))
    logger.debug(f"Subdivided {len(surface.vertices)} vertices into {len(vertices)}")
    return subdivided, transported


def connected_sum(triangles_a, triangle_a, triangles_b, triangle_b):
    """
    Removes `triangle_a` and `triangle_b` and glues along their boundaries,
    reversing orientation so that oriented inputs give an oriented result.
    Vertex names of the two lists must be disjoint.
    """
    x, y, z = triangle_a
    u, v, w = triangle_b
    glue = {u: x, v: z, w: y}
    result = [t for t in triangles_a if t != triangle_a]
    for t in triangles_b:
        if t == triangle_b:
            continue
        result.append(tuple(glue.get(s, s) for s in t))
    return result


# Building blocks
def octahedron(prefix=""):
    triangles = []
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                x = prefix + ("x+" if sx > 0 else "x-")
                y = prefix + ("y+" if sy > 0 else "y-")
                z = prefix + ("z+" if sz > 0 else "z-")
                triangles.append((x, y, z) if sx * sy * sz > 0 else (x, z, y))
    return triangles


def grid_torus(prefix="", n=3):
    def name(i, j):
        return f"{prefix}{i % n}.{j % n}"

    triangles = []
    for i in range(n):
        for j in range(n):
            triangles.append((name(i, j), name(i + 1, j), name(i + 1, j + 1)))
            triangles.append((name(i, j), name(i + 1, j + 1), name(i, j + 1)))
    return triangles


def projective_plane(prefix=""):
    faces = ["123", "134", "145", "156", "162",
             "235", "346", "452", "563", "624"]
    return [tuple(prefix + c for c in f) for f in faces]


def mirror_disk(prefix, m):
    """
    Disk whose boundary is the cycle `{prefix}a0 .. a{m-1}`, collared by an
    inner ring and capped by a center vertex; the first triangle avoids the
    boundary and is the gluing triangle.
    """
    a = [f"{prefix}a{i}" for i in range(m)]
    b = [f"{prefix}b{i}" for i in range(m)]
    s = f"{prefix}s"
    caps = [(b[i], b[(i + 1) % m], s) for i in range(m)]
    collar = []
    for i in range(m):
        j = (i + 1) % m
        collar.append((a[i], a[j], b[i]))
        collar.append((a[j], b[j], b[i]))
    return caps + collar, a
