import logging
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List
from orbikit.models import (
    Cell, IncompatibleComplex, Signature, StratifiedComplex, StratumSummary
)
from orbikit.surfaces import (
    connected_sum, edge_key, grid_torus, mirror_disk, octahedron,
    projective_plane, surface_edges
)

logger = logging.getLogger(__name__)


def base_euler(sig: Signature) -> int:
    b = len(sig.boundary)
    if sig.orientable:
        return 2 - 2 * sig.genus - b
    return 2 - sig.genus - b


def euler_closed_form(sig: Signature) -> Fraction:
    chi = Fraction(base_euler(sig))
    for p in sig.cone_points:
        chi -= 1 - Fraction(1, p)
    for q in sig.corner_points:
        chi -= (1 - Fraction(1, q)) / 2
    return chi


class _Incidence:
    def __init__(self, complex_: StratifiedComplex):
        self.cells: Dict[str, Cell] = {}
        self.edges_at = defaultdict(list)
        self.faces_at = defaultdict(list)
        for cell in complex_.cells:
            if cell.id in self.cells:
                raise IncompatibleComplex(message=f"duplicate cell id '{cell.id}'")
            self.cells[cell.id] = cell
        for cell in complex_.cells:
            for face in cell.faces:
                if face not in self.cells:
                    raise IncompatibleComplex(
                        message=f"cell '{cell.id}' refers to unknown face '{face}'")
                if self.cells[face].dim != cell.dim - 1:
                    raise IncompatibleComplex(
                        message=f"face '{face}' of '{cell.id}' has wrong dimension")
                if cell.dim == 1:
                    self.edges_at[face].append(cell)
                elif cell.dim == 2:
                    self.faces_at[face].append(cell)

    def vertices_of(self, cell: Cell) -> List[str]:
        if cell.dim == 0:
            return [cell.id]
        if cell.dim == 1:
            return list(cell.faces)
        return sorted({v for e in cell.faces for v in self.cells[e].faces})

    def on_mirror(self, vertex_id: str) -> bool:
        return any(e.n == 2 for e in self.edges_at[vertex_id])


def validate_complex(complex_: StratifiedComplex) -> _Incidence:
    incidence = _Incidence(complex_)
    if not complex_.cells:
        raise IncompatibleComplex(message="empty complex")
    for cell in complex_.cells:
        if cell.dim == 0 and cell.faces:
            raise IncompatibleComplex(message=f"vertex '{cell.id}' has faces")
        elif cell.dim == 1:
            _check_edge(incidence, cell)
        elif cell.dim == 2:
            _check_face(incidence, cell)
    for cell in complex_.cells:
        if cell.dim != 0:
            continue
        edges = incidence.edges_at[cell.id]
        mirror = [e for e in edges if e.n == 2]
        if any(cell.n < e.n for e in edges):
            raise IncompatibleComplex(
                message=f"vertex '{cell.id}' has local order {cell.n} below "
                        f"an incident edge")
        if len(mirror) not in (0, 2):
            raise IncompatibleComplex(
                message=f"vertex '{cell.id}' meets {len(mirror)} mirror edges")
        if mirror and cell.n % 2:
            raise IncompatibleComplex(
                message=f"mirror vertex '{cell.id}' has odd local order {cell.n}")
    return incidence


def _check_edge(incidence, cell):
    if len(cell.faces) != 2 or cell.faces[0] == cell.faces[1]:
        raise IncompatibleComplex(
            message=f"edge '{cell.id}' must join two distinct vertices")
    if cell.n not in (1, 2):
        raise IncompatibleComplex(
            message=f"edge '{cell.id}' has local order {cell.n}, expected 1 or 2")
    expected = 2 if cell.n == 1 else 1
    count = len(incidence.faces_at[cell.id])
    if count != expected:
        raise IncompatibleComplex(
            message=f"edge '{cell.id}' with local order {cell.n} bounds {count} "
                    f"2-cells, expected {expected}")


def _check_face(incidence, cell):
    if cell.n != 1:
        raise IncompatibleComplex(
            message=f"2-cell '{cell.id}' has local order {cell.n}, expected 1")
    if len(cell.faces) < 2 or len(set(cell.faces)) != len(cell.faces):
        raise IncompatibleComplex(
            message=f"2-cell '{cell.id}' has a degenerate boundary")
    degree = defaultdict(list)
    for e in cell.faces:
        a, b = incidence.cells[e].faces
        degree[a].append(b)
        degree[b].append(a)
    if any(len(ns) != 2 for ns in degree.values()):
        raise IncompatibleComplex(
            message=f"boundary of 2-cell '{cell.id}' is not a cycle")
    start = next(iter(degree))
    seen, previous, current = {start}, None, start
    while True:
        a, b = degree[current]
        following = b if a == previous and a != b else a
        if following in seen:
            break
        seen.add(following)
        previous, current = current, following
    if len(seen) != len(degree):
        raise IncompatibleComplex(
            message=f"boundary of 2-cell '{cell.id}' has several components")


def euler_from_complex(complex_: StratifiedComplex) -> Fraction:
    validate_complex(complex_)
    return sum((Fraction((-1) ** c.dim, c.n) for c in complex_.cells), Fraction(0))


def _stratum_label(incidence, cell):
    if cell.n == 1:
        return "1"
    if cell.dim == 1:
        return "D1"
    if incidence.on_mirror(cell.id):
        return f"D{cell.n // 2}"
    return f"Z{cell.n}"


def strata_summary(complex_: StratifiedComplex) -> List[StratumSummary]:
    incidence = validate_complex(complex_)
    chi_c = defaultdict(int)
    orders = {}
    for cell in complex_.cells:
        label = _stratum_label(incidence, cell)
        chi_c[label] += (-1) ** cell.dim
        orders[label] = cell.n
    return [StratumSummary(label=label, order=orders[label], chi_c=chi_c[label])
            for label in sorted(chi_c, key=lambda k: (orders[k], k))]


def euler_from_strata(complex_: StratifiedComplex) -> Fraction:
    return sum((Fraction(s.chi_c, s.order) for s in strata_summary(complex_)),
               Fraction(0))


def barycentric_subdivide(complex_: StratifiedComplex) -> StratifiedComplex:
    incidence = validate_complex(complex_)
    vertex_ids = {}
    cells = []
    for i, cell in enumerate(complex_.cells):
        vertex_ids[cell.id] = f"v{i}"
        cells.append(Cell(id=f"v{i}", dim=0, n=cell.n))

    edge_ids = {}

    def add_edge(lower, upper):
        edge_id = f"e{len(edge_ids)}"
        edge_ids[(lower.id, upper.id)] = edge_id
        cells.append(Cell(id=edge_id, dim=1, n=upper.n,
                          faces=(vertex_ids[lower.id], vertex_ids[upper.id])))

    for cell in complex_.cells:
        if cell.dim == 1:
            for v in cell.faces:
                add_edge(incidence.cells[v], cell)
        elif cell.dim == 2:
            for v in incidence.vertices_of(cell):
                add_edge(incidence.cells[v], cell)
            for e in cell.faces:
                add_edge(incidence.cells[e], cell)

    count = 0
    for cell in complex_.cells:
        if cell.dim != 2:
            continue
        for e in cell.faces:
            for v in incidence.cells[e].faces:
                cells.append(Cell(
                    id=f"f{count}", dim=2, n=cell.n,
                    faces=(edge_ids[(v, e)], edge_ids[(e, cell.id)],
                           edge_ids[(v, cell.id)])))
                count += 1
    return StratifiedComplex(cells=tuple(cells))


def _first_free_triangle(triangles, reserved):
    for t in triangles:
        if not reserved.intersection(t):
            return t
    raise IncompatibleComplex(message="no triangle left for a connected sum")


def build_stratified_complex(sig: Signature) -> StratifiedComplex:
    triangles = octahedron("s.")
    reserved = set()

    def attach(block, block_triangle):
        nonlocal triangles
        target = _first_free_triangle(triangles, reserved)
        triangles = connected_sum(triangles, target, block, block_triangle)

    for i in range(sig.genus):
        block = grid_torus(f"h{i}.") if sig.orientable else projective_plane(f"c{i}.")
        attach(block, block[0])

    local_orders = {}
    for i, mirror in enumerate(sig.boundary):
        block, ring = mirror_disk(f"m{i}.", max(len(mirror.corners), 3))
        for j, v in enumerate(ring):
            local_orders[v] = 2 * mirror.corners[j] if j < len(mirror.corners) else 2
        attach(block, block[0])
        reserved.update(ring)

    for i, p in enumerate(sig.cone_points):
        block = octahedron(f"k{i}.")
        top = f"k{i}.z+"
        attach(block, _first_free_triangle(block, {top}))
        local_orders[top] = p
        reserved.add(top)

    complex_ = _complex_from_triangles(triangles, local_orders)
    logger.debug(f"Built complex for {sig} with cell counts {complex_.counts()}")
    return complex_


def _complex_from_triangles(triangles, local_orders) -> StratifiedComplex:
    incidence = surface_edges(triangles)
    vertices = sorted({v for t in triangles for v in t})
    cells = [Cell(id=f"v:{v}", dim=0, n=local_orders.get(v, 1)) for v in vertices]
    for a, b in sorted(incidence):
        # boundary edges of the underlying surface are the mirror locus
        n = 2 if len(incidence[(a, b)]) == 1 else 1
        cells.append(Cell(id=f"e:{a}|{b}", dim=1, n=n, faces=(f"v:{a}", f"v:{b}")))
    for t in triangles:
        a, b, c = t
        cells.append(Cell(
            id="f:" + "|".join(sorted(t)), dim=2, n=1,
            faces=tuple("e:{}|{}".format(*edge_key(x, y))
                        for x, y in ((a, b), (b, c), (c, a)))))
    return StratifiedComplex(cells=tuple(cells))
