import logging
from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional
import networkx as nx
from sympy.combinatorics.perm_groups import PermutationGroup
from sympy.combinatorics.permutations import Permutation
from orbikit.models import (
    ActionSpec, Cell, ChiMismatch, ClosureBoundExceeded, MirrorComponent,
    NonOrientableUnsupported, NotSimplicial, QuotientResult, Signature,
    SimplicialSurface, StratifiedComplex
)
from orbikit.euler import euler_closed_form, euler_from_complex
from orbikit.surfaces import (
    barycentric_surface, link_cycle, stars, surface_euler, validate_surface
)

logger = logging.getLogger(__name__)

CLOSURE_BOUND = 20000


class SimplicialAction:
    """A closed surface with a finite group of simplicial automorphisms, materialized."""

    def __init__(self, surface: SimplicialSurface, generators: List[Dict[str, str]],
                 group: PermutationGroup, elements: List[tuple]):
        self.surface = surface
        self.generators = generators
        self.group = group
        self.elements = elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def to_spec(self) -> ActionSpec:
        return ActionSpec.from_mappings(self.surface, self.generators)


def mapping_of(generator):
    return dict(generator.perm) if hasattr(generator, "perm") else dict(generator)


def _array_form(surface, mapping):
    index = {v: i for i, v in enumerate(surface.vertices)}
    if set(mapping) != set(index) or set(mapping.values()) != set(index):
        raise NotSimplicial(
            message="generator is not a bijection of the vertex set")
    return [index[mapping[v]] for v in surface.vertices]


def _check_simplicial(surface, mapping):
    triangles = {frozenset(t) for t in surface.triangles}
    for t in surface.triangles:
        image = frozenset(mapping[v] for v in t)
        if image not in triangles:
            raise NotSimplicial(
                message=f"triangle {t} is mapped to {tuple(mapping[v] for v in t)}, "
                        f"which is not a triangle")


def validate_action(surface: SimplicialSurface, generators,
                    closure_bound: int = CLOSURE_BOUND) -> SimplicialAction:
    """
    Closes `generators` (vertex permutations, as dicts or PermutationSpec) into
    a group acting on `surface`. Elements act on vertices, so the action is
    effective by construction.
    """
    validate_surface(surface)
    mappings = [mapping_of(g) for g in generators]
    arrays = []
    for mapping in mappings:
        arrays.append(_array_form(surface, mapping))
        # the generators preserving the triangle set is enough for the whole group
        _check_simplicial(surface, mapping)

    degree = len(surface.vertices)
    group = PermutationGroup([Permutation(a) for a in arrays] or
                             [Permutation(list(range(degree)))])
    order = group.order()
    if order > closure_bound:
        raise ClosureBoundExceeded(
            message=f"group of order {order} exceeds the closure bound {closure_bound}")
    elements = sorted(tuple(g) for g in group.generate(af=True))
    logger.debug(f"Closed {len(mappings)} generators into a group of order {order}")
    return SimplicialAction(surface, mappings, group, elements)


def action_from_spec(spec: ActionSpec, surface: Optional[SimplicialSurface] = None,
                     closure_bound: int = CLOSURE_BOUND) -> SimplicialAction:
    surface = surface or spec.surface
    if surface is None:
        raise NotSimplicial(message="action has no surface")
    return validate_action(surface, spec.generators, closure_bound)


def subdivide(surface, mappings, times):
    for _ in range(times):
        surface, mappings = barycentric_surface(surface, mappings)
    return surface, mappings


def _image(g, simplex):
    return tuple(sorted(g[i] for i in simplex))


def _simplices(surface):
    index = {v: i for i, v in enumerate(surface.vertices)}
    triangles = sorted(tuple(sorted(index[v] for v in t)) for t in surface.triangles)
    edges = sorted({pair for t in triangles for pair in combinations(t, 2)})
    vertices = [(i,) for i in range(len(surface.vertices))]
    return vertices, edges, triangles


def check_regular(action: SimplicialAction):
    """Raises unless every element stabilizing a simplex fixes it pointwise."""
    for simplices in _simplices(action.surface)[1:]:
        for s in simplices:
            for g in action.elements:
                if _image(g, s) == s and any(g[i] != i for i in s):
                    raise NotSimplicial(
                        message=f"simplex {s} is flipped by a group element after "
                                f"regularization")


def regularize(action: SimplicialAction, subdivisions: int = 2,
               closure_bound: int = CLOSURE_BOUND) -> SimplicialAction:
    surface, mappings = subdivide(action.surface, action.generators, subdivisions)
    regular = validate_action(surface, mappings, closure_bound)
    check_regular(regular)
    logger.debug(f"Regularized action: {len(action.surface.vertices)} -> "
                 f"{len(surface.vertices)} vertices")
    return regular


class OrbitTable:
    """Cell orbits of a regular action, numbered by their minimal representative."""

    def __init__(self, action: SimplicialAction):
        self.action = action
        self.elements = action.elements
        self.stars = stars(_simplices(action.surface)[2])
        self.reps = []
        self.orbit_of = {}
        self.size = {}
        for simplices in _simplices(action.surface):
            reps = []
            for s in simplices:
                if s in self.orbit_of:
                    continue
                orbit = {_image(g, s) for g in self.elements}
                for member in orbit:
                    self.orbit_of[member] = s
                self.size[s] = len(orbit)
                reps.append(s)
            self.reps.append(reps)
        self.ids = {}
        for dim, prefix in enumerate("vef"):
            for i, rep in enumerate(self.reps[dim]):
                self.ids[rep] = f"{prefix}{i}"

    def local_order(self, rep) -> int:
        return len(self.elements) // self.size[rep]

    def cell_id(self, simplex) -> str:
        return self.ids[self.orbit_of[tuple(sorted(simplex))]]

    def stabilizer(self, vertex: int) -> List[tuple]:
        return [g for g in self.elements if g[vertex] == vertex]

    def orbit(self, vertex: int) -> List[int]:
        return sorted({g[vertex] for g in self.elements})

    def vertex_kind(self, vertex: int):
        """("cyclic" | "dihedral", stabilizer order) from the action on the link cycle."""
        stabilizer = self.stabilizer(vertex)
        cycle = link_cycle(self.stars[vertex], vertex)
        position = {w: i for i, w in enumerate(cycle)}
        length = len(cycle)
        for g in stabilizer:
            i0 = position[g[cycle[0]]]
            i1 = position[g[cycle[1]]]
            if i1 == (i0 - 1) % length:
                return "dihedral", len(stabilizer)
        return "cyclic", len(stabilizer)

    def complex(self) -> StratifiedComplex:
        cells = []
        for rep in self.reps[0]:
            cells.append(Cell(id=self.ids[rep], dim=0, n=self.local_order(rep)))
        for rep in self.reps[1]:
            cells.append(Cell(id=self.ids[rep], dim=1, n=self.local_order(rep),
                              faces=tuple(self.cell_id((v,)) for v in rep)))
        for rep in self.reps[2]:
            cells.append(Cell(id=self.ids[rep], dim=2, n=self.local_order(rep),
                              faces=tuple(self.cell_id(e) for e in combinations(rep, 2))))
        return StratifiedComplex(cells=tuple(cells))


def _is_orientable(complex_: StratifiedComplex) -> bool:
    cells = {c.id: c for c in complex_.cells}
    faces_at = defaultdict(list)
    for face in complex_.of_dim(2):
        for e in face.faces:
            faces_at[e].append(face.id)

    def directions(face_id, flip):
        # each edge of a triangle, directed along a cyclic order of its vertices
        edges = cells[face_id].faces
        ends = [cells[e].faces for e in edges]
        a, b = ends[0]
        c = (set(ends[1]) | set(ends[2])).difference((a, b)).pop()
        order = (a, b, c) if not flip else (a, c, b)
        result = {}
        for e, (x, y) in zip(edges, ends):
            forward = any(order[i] == x and order[(i + 1) % 3] == y for i in range(3))
            result[e] = forward
        return result

    # faces meet across regular edges; mirror edges do not glue
    dual = nx.MultiGraph()
    dual.add_nodes_from(sorted(f.id for f in complex_.of_dim(2)))
    for e, faces in faces_at.items():
        if cells[e].n == 1 and len(faces) == 2:
            dual.add_edge(*faces, key=e)

    flips = {}
    for component in nx.connected_components(dual):
        seed = min(component)
        flips[seed] = False
        for face_id, other in nx.bfs_edges(dual, seed):
            e = next(iter(dual[face_id][other]))
            forward = directions(face_id, flips[face_id])[e]
            flips[other] = directions(other, False)[e] == forward
    return all(directions(u, flips[u])[e] != directions(v, flips[v])[e]
               for u, v, e in dual.edges(keys=True))


def _mirror_components(complex_: StratifiedComplex,
                       corner_orders: Dict[str, int]) -> List[MirrorComponent]:
    mirrors = nx.Graph()
    mirrors.add_edges_from(edge.faces for edge in complex_.of_dim(1) if edge.n == 2)
    components = []
    for component in sorted(nx.connected_components(mirrors), key=min):
        cycle = nx.find_cycle(mirrors.subgraph(component), source=min(component))
        circle = [a for a, _ in cycle]
        corners = [corner_orders[v] for v in circle if v in corner_orders]
        components.append(MirrorComponent(corners=tuple(corners)))
    return components


class RegularQuotient:
    """Quotient data of an already regular action."""

    def __init__(self, action: SimplicialAction, chi_cover: Optional[int] = None):
        self.action = action
        self.table = OrbitTable(action)
        self.complex = self.table.complex()
        self.cones: Dict[str, int] = {}
        self.corners: Dict[str, int] = {}
        for rep in self.table.reps[0]:
            kind, order = self.table.vertex_kind(rep[0])
            cell_id = self.table.ids[rep]
            if kind == "dihedral" and order > 2:
                self.corners[cell_id] = order // 2
            elif kind == "cyclic" and order > 1:
                self.cones[cell_id] = order
        self.chi_cover = surface_euler(action.surface) if chi_cover is None else chi_cover
        self.chi_quotient = euler_from_complex(self.complex)
        self.signature, self.note = self._signature()

    def singular_vertices(self):
        """(cell id, representative vertex index, local order) for cones then corners."""
        reps = {self.table.ids[r]: r[0] for r in self.table.reps[0]}
        found = [(cid, reps[cid], p) for cid, p in self.cones.items()]
        found.sort(key=lambda x: -x[2])
        corners = [(cid, reps[cid], 2 * q) for cid, q in self.corners.items()]
        return found + corners

    def _signature(self):
        boundary = _mirror_components(self.complex, self.corners)
        v, e, f = self.complex.counts()
        chi_space = v - e + f
        orientable = _is_orientable(self.complex)
        if not orientable and boundary:
            return None, ("quotient is non-orientable with mirrors; "
                          "no signature is extracted")
        if orientable:
            genus = (2 - chi_space - len(boundary)) // 2
        else:
            genus = 2 - chi_space - len(boundary)
        sig = Signature(orientable=orientable, genus=genus,
                        cone_points=tuple(self.cones.values()), boundary=tuple(boundary))
        return sig, None

    def result(self) -> QuotientResult:
        order = len(self.action.elements)
        if self.chi_cover != order * self.chi_quotient:
            raise ChiMismatch(
                message=f"chi(cover) = {self.chi_cover} but |G| * chi(quotient) = "
                        f"{order * self.chi_quotient}")
        if self.signature is not None:
            closed_form = euler_closed_form(self.signature)
            if closed_form != self.chi_quotient:
                raise ChiMismatch(
                    message=f"signature {self.signature} has chi {closed_form}, "
                            f"cell sum gives {self.chi_quotient}")
        return QuotientResult(
            complex=self.complex, signature=self.signature, group_order=order,
            chi_cover=Fraction(self.chi_cover), chi_quotient=self.chi_quotient,
            note=self.note)


def quotient(action: SimplicialAction, subdivisions: int = 2,
             closure_bound: int = CLOSURE_BOUND) -> QuotientResult:
    regular = regularize(action, subdivisions, closure_bound)
    result = RegularQuotient(regular, chi_cover=surface_euler(action.surface)).result()
    logger.debug(f"Quotient by group of order {result.group_order}: "
                 f"{result.signature}, chi {result.chi_quotient}")
    return result


def extract_signature(result: QuotientResult) -> Signature:
    if result.signature is None:
        raise NonOrientableUnsupported(
            message=result.note or "no signature for this quotient")
    return result.signature
