"""The colored permutohedron P_n^alpha as a face poset.

Faces are elements of Q_n^alpha. Each alternating element is a facet; the
faces of its component are the colored partitions obtained by splitting
each block into an ordered set partition that keeps the block's color.
Dimension of a face is n minus its number of blocks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial, prod
from typing import Iterator

from .arith import Poly, multinomial, ordered_partition_count
from .eulerian import classical_eulerian, f_polynomial_by_blocks
from .errors import BudgetExceeded
from .structures import (
    ColoredOrderedSetPartition,
    Composition,
    ordered_set_partitions_of,
    compositions_of,
    enumerate_Q,
    is_alternating,
    ordered_set_partitions,
    upper_covers,
)

MAX_N = 7
FACE_BUDGET = 2_000_000
VERTEX_BUDGET = 5040  # 7!: a single-block facet at n = 7


def q_size(n: int, alpha: int) -> int:
    return sum(ordered_partition_count(n, k) * alpha ** (k - 1) for k in range(1, n + 1))


def permutohedron_f_vector(c: int) -> list[int]:
    """Faces of P_c by dimension."""
    return [ordered_partition_count(c, c - d) for d in range(c)]


@dataclass
class ComplexComponent:
    facet: ColoredOrderedSetPartition
    faces: dict[int, list[ColoredOrderedSetPartition]] = field(repr=False)

    @property
    def dimension(self) -> int:
        return self.facet.n - len(self.facet.blocks)

    @property
    def f_vector(self) -> list[int]:
        return [len(self.faces.get(d, ())) for d in range(self.dimension + 1)]

    def all_faces(self) -> Iterator[ColoredOrderedSetPartition]:
        for d in sorted(self.faces):
            yield from self.faces[d]


def component_faces(facet: ColoredOrderedSetPartition) -> Iterator[ColoredOrderedSetPartition]:
    """The lower order ideal of an alternating facet in Q_n^alpha."""
    splits = [list(ordered_set_partitions_of(b)) for b in facet.blocks]
    for choice in product(*splits):
        blocks, colors = [], []
        for pieces, color in zip(choice, facet.colors):
            blocks.extend(pieces)
            colors.extend([color] * len(pieces))
        yield ColoredOrderedSetPartition(tuple(blocks), tuple(colors), facet.alpha)


def build_component(facet: ColoredOrderedSetPartition) -> ComplexComponent:
    if not is_alternating(facet):
        raise ValueError("facets must have no adjacent blocks of equal color")
    n = facet.n
    faces: dict[int, list[ColoredOrderedSetPartition]] = {}
    for face in component_faces(facet):
        faces.setdefault(n - len(face.blocks), []).append(face)
    return ComplexComponent(facet, faces)


@dataclass
class PolytopalComplex:
    n: int
    alpha: int
    components: list[ComplexComponent]
    f_dim: list[int]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * f for d, f in enumerate(self.f_dim))

    def census(self) -> dict:
        by_dim: dict[int, int] = {}
        for comp in self.components:
            by_dim[comp.dimension] = by_dim.get(comp.dimension, 0) + 1
        return {
            "n": self.n,
            "alpha": self.alpha,
            "f_dim": self.f_dim,
            "components": len(self.components),
            "components_by_dimension": {str(d): by_dim[d] for d in sorted(by_dim)},
            "euler_char": self.euler_characteristic,
        }


def _check_budget(n: int, alpha: int, budget: int):
    if n < 1 or alpha < 1:
        raise ValueError("n and alpha must be at least 1")
    if n > MAX_N:
        raise BudgetExceeded(f"building P_{n}^{alpha} (n is capped at {MAX_N})", n, MAX_N)
    size = q_size(n, alpha)
    if size > budget:
        raise BudgetExceeded(f"building P_{n}^{alpha}", size, budget)


def alternating_elements(n: int, alpha: int) -> Iterator[ColoredOrderedSetPartition]:
    """Alternating elements of Q_n^alpha, generated without scanning all of Q."""
    for blocks in ordered_set_partitions(n):
        k = len(blocks)
        # colors right to left: last is 0, each differs from its right neighbour
        choices = [range(alpha - 1)] * (k - 1)
        for steps in product(*choices):
            colors = [0] * k
            for i in range(k - 2, -1, -1):
                c = steps[i]
                colors[i] = c if c < colors[i + 1] else c + 1
            yield ColoredOrderedSetPartition(blocks, tuple(colors), alpha)


def build_complex(n: int, alpha: int, budget: int = FACE_BUDGET) -> PolytopalComplex:
    _check_budget(n, alpha, budget)
    components = [build_component(f) for f in alternating_elements(n, alpha)]
    f_dim = [0] * n
    for comp in components:
        for d, faces in comp.faces.items():
            f_dim[d] += len(faces)
    return PolytopalComplex(n, alpha, components, f_dim)


def f_dim_formula(n: int, alpha: int) -> list[int]:
    return [ordered_partition_count(n, n - d) * alpha ** (n - d - 1) for d in range(n)]


def count_components(n: int, alpha: int) -> int:
    """sum over compositions c of (alpha-1)^(|c|-1) * multinomial(c)."""
    return sum((alpha - 1) ** (len(c) - 1) * multinomial(c) for c in compositions_of(n))


def count_connected_components(n: int, alpha: int, budget: int = FACE_BUDGET) -> int:
    """Connected components of the Hasse diagram of Q_n^alpha, by union-find."""
    _check_budget(n, alpha, budget)
    parent: dict = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for tau in enumerate_Q(n, alpha):
        parent.setdefault(tau, tau)
        for sigma in upper_covers(tau):
            parent.setdefault(sigma, sigma)
            ra, rb = find(tau), find(sigma)
            if ra != rb:
                parent[ra] = rb
    return sum(1 for x in parent if parent[x] == x)


def verify_components_equal_faces(n: int, alpha: int) -> bool:
    if alpha < 2:
        raise ValueError("alpha must be at least 2")
    return count_components(n, alpha) == sum(f_dim_formula(n, alpha - 1))


@dataclass(frozen=True)
class EulerCharacteristic:
    alternating_sum: int
    components: int
    eulerian_formula: Fraction | None   # undefined at alpha = 1

    @property
    def consistent(self) -> bool:
        values = {self.alternating_sum, self.components}
        if self.eulerian_formula is not None:
            values.add(self.eulerian_formula)
        return len(values) == 1


def euler_characteristic(n: int, alpha: int) -> EulerCharacteristic:
    """chi(P_n^alpha) three ways: alternating f-sum, component count, and
    (alpha-1)^n / alpha * A_n(alpha/(alpha-1))."""
    alt = sum((-1) ** d * f for d, f in enumerate(f_dim_formula(n, alpha)))
    formula = None
    if alpha >= 2:
        a = Fraction(alpha)
        formula = (a - 1) ** n / a * classical_eulerian(n)(a / (a - 1))
    return EulerCharacteristic(alt, count_components(n, alpha), formula)


def verify_face_lattice(n: int, alpha: int) -> bool:
    """Component faces partition Q_n^alpha and every cover stays in its component."""
    cx = build_complex(n, alpha)
    owner = {}
    for idx, comp in enumerate(cx.components):
        for face in comp.all_faces():
            if face in owner:
                return False
            owner[face] = idx
    elements = list(enumerate_Q(n, alpha))
    if len(owner) != len(elements) or any(e not in owner for e in elements):
        return False
    for tau in elements:
        for sigma in upper_covers(tau):
            if owner[sigma] != owner[tau]:
                return False
    # within a component, faces one dimension apart are related exactly by covers
    for comp in cx.components:
        for d in range(comp.dimension):
            upper = set(comp.faces.get(d + 1, ()))
            for tau in comp.faces.get(d, ()):
                ups = set(upper_covers(tau))
                if not ups <= upper:
                    return False
    return True


def verify_f_scaling(n: int, alpha: int) -> bool:
    """F_alpha(x) = F_1(alpha x) coefficientwise for the blocks-indexed f-polynomial."""
    return f_polynomial_by_blocks(n, alpha) == f_polynomial_by_blocks(n, 1).scale_argument(alpha)


def product_f_vector(parts: Composition) -> list[int]:
    """Coefficientwise product of the f-vectors of P_{c_1}, ..., P_{c_k}."""
    poly = Poly([1])
    for c in parts:
        poly = poly * Poly(permutohedron_f_vector(c))
    return poly.int_coeffs()


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeometricVertex:
    order: tuple[int, ...]          # labels read left to right
    point: tuple[Fraction, ...]     # point[label-1] = position of label in order


def realize_component(comp: ComplexComponent) -> list[GeometricVertex]:
    """One vertex per linear order refining the facet's block order."""
    sizes = [len(b) for b in comp.facet.blocks]
    count = prod(factorial(s) for s in sizes)
    if comp.dimension > 6 or count > VERTEX_BUDGET:
        raise BudgetExceeded("realizing a component", count, VERTEX_BUDGET)
    n = comp.facet.n
    out = []
    for choice in product(*(permutations(b) for b in comp.facet.blocks)):
        order = tuple(x for piece in choice for x in piece)
        point = [Fraction(0)] * n
        for pos, label in enumerate(order, start=1):
            point[label - 1] = Fraction(pos)
        out.append(GeometricVertex(order, tuple(point)))
    return out


def vertex_edges(comp: ComplexComponent, vertices: list[GeometricVertex]) -> list[tuple[int, int]]:
    """Index pairs of vertices differing by an adjacent swap inside one block."""
    index = {v.order: i for i, v in enumerate(vertices)}
    block_of = {x: bi for bi, b in enumerate(comp.facet.blocks) for x in b}
    edges = []
    for i, v in enumerate(vertices):
        o = v.order
        for p in range(len(o) - 1):
            if block_of[o[p]] == block_of[o[p + 1]]:
                j = index[o[:p] + (o[p + 1], o[p]) + o[p + 2:]]
                if i < j:
                    edges.append((i, j))
    return edges


def _face_vertex_orders(face: ColoredOrderedSetPartition) -> list[tuple[int, ...]]:
    return [
        tuple(x for piece in choice for x in piece)
        for choice in product(*(permutations(b) for b in face.blocks))
    ]


def _cyclic_polygon(face: ColoredOrderedSetPartition, vertices: list[GeometricVertex], index) -> list[int]:
    """Vertex indices of a 2-face in cyclic order (walk its edge cycle)."""
    members = {index[o] for o in _face_vertex_orders(face)}
    block_of = {x: bi for bi, b in enumerate(face.blocks) for x in b}
    nbrs = {i: [] for i in members}
    for i in members:
        o = vertices[i].order
        for p in range(len(o) - 1):
            if block_of[o[p]] == block_of[o[p + 1]]:
                nbrs[i].append(index[o[:p] + (o[p + 1], o[p]) + o[p + 2:]])
    start = cur = min(members)
    cycle, prev = [start], None
    while True:
        nxt = min(x for x in nbrs[cur] if x != prev)
        if nxt == start:
            return cycle
        cycle.append(nxt)
        prev, cur = cur, nxt


def geometry(cx: PolytopalComplex) -> dict:
    """Vertices, edges and 2-faces of every component, with global indices."""
    verts: list[GeometricVertex] = []
    owner: list[int] = []
    edges: list[tuple[int, int]] = []
    polygons: list[list[int]] = []
    for ci, comp in enumerate(cx.components):
        vs = realize_component(comp)
        base = len(verts)
        verts.extend(vs)
        owner.extend([ci] * len(vs))
        edges.extend((base + i, base + j) for i, j in vertex_edges(comp, vs))
        index = {v.order: base + i for i, v in enumerate(vs)}
        for face in comp.faces.get(2, ()):
            polygons.append(_cyclic_polygon(face, verts, index))
    return {"vertices": verts, "component": owner, "edges": edges, "polygons": polygons}


def _decimal(x: Fraction, precision: int) -> str:
    scaled = round(x * 10**precision)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(precision + 1, "0")
    if not precision:
        return sign + digits
    return f"{sign}{digits[:-precision]}.{digits[-precision:]}"


def write_off(cx: PolytopalComplex, path, precision: int = 6) -> None:
    """OFF export: every edge is listed as a 2-vertex face, then every 2-face
    as a cyclic polygon. Coordinates live in R^n."""
    g = geometry(cx)
    faces = [list(e) for e in g["edges"]] + g["polygons"]
    lines = ["OFF", f"# n={cx.n} alpha={cx.alpha} coordinates in R^{cx.n}, precision={precision}",
             f"{len(g['vertices'])} {len(faces)} {len(g['edges'])}"]
    for v in g["vertices"]:
        lines.append(" ".join(_decimal(c, precision) for c in v.point))
    for f in faces:
        lines.append(" ".join(str(x) for x in [len(f)] + f))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def geometry_json(cx: PolytopalComplex) -> dict:
    """Lossless twin of the OFF export: exact rationals as [num, den]."""
    g = geometry(cx)
    return {
        "n": cx.n,
        "alpha": cx.alpha,
        "vertices": [
            {"component": ci, "order": list(v.order),
             "point": [[c.numerator, c.denominator] for c in v.point]}
            for ci, v in zip(g["component"], g["vertices"])
        ],
        "edges": [list(e) for e in g["edges"]],
        "polygons": g["polygons"],
        "facets": [comp.facet.to_json() for comp in cx.components],
    }


def write_geometry_json(cx: PolytopalComplex, path) -> None:
    with open(path, "w") as fh:
        json.dump(geometry_json(cx), fh, indent=1, sort_keys=True)
        fh.write("\n")
