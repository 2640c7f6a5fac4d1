"""Simplicial complexes: representation, face closure, validation, cell numbering.

A model is a list of simplexes over a shared vertex table, each simplex
carrying the set of atomic propositions that hold on its cell (the relative
interior).  Everything downstream works on the face-closed complex and on the
dense, deterministic cell numbering produced by :func:`build_cell_table`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateVertexError,
    EmptySimplexError,
    NotClosedError,
    ToleranceError,
    UnknownCellError,
)


def canonicalize_simplex(points: Iterable[int]) -> tuple[int, ...]:
    """Sort a vertex list; reject duplicates and the empty simplex."""
    pts = tuple(sorted(points))
    if not pts:
        raise EmptySimplexError("a simplex needs at least one vertex")
    for a, b in zip(pts, pts[1:]):
        if a == b:
            raise DuplicateVertexError(f"vertex {a} listed twice in {list(points)}")
    return pts


@dataclass(frozen=True)
class SimplexSpec:
    """One simplex: sorted vertex indices plus the atom ids holding on its cell."""

    points: tuple[int, ...]
    atoms: frozenset[int] = frozenset()

    @property
    def dim(self) -> int:
        return len(self.points) - 1


@dataclass(frozen=True)
class SimplicialModel:
    """A polyhedral model: vertex coordinates, atom names, and simplexes.

    ``vertices`` is an (n_vertices, ambient_dim) float64 array, read-only after
    construction.  Atom references inside simplexes are indices into
    ``atom_names``.  Instances are immutable and safe to share across threads.
    """

    ambient_dim: int
    vertices: np.ndarray
    atom_names: tuple[str, ...]
    simplexes: tuple[SimplexSpec, ...]

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=np.float64)
        if verts.ndim != 2 or verts.shape[1] != self.ambient_dim:
            raise ValueError(
                f"vertex table must be (n, {self.ambient_dim}), got {verts.shape}"
            )
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "simplexes", tuple(self.simplexes))
        object.__setattr__(self, "atom_names", tuple(self.atom_names))

    @property
    def vertex_count(self) -> int:
        return self.vertices.shape[0]

    def atoms_of(self, spec: SimplexSpec) -> frozenset[str]:
        return frozenset(self.atom_names[i] for i in spec.atoms)


def face_closure(model: SimplicialModel) -> SimplicialModel:
    """Add every missing nonempty face of every listed simplex.

    Listed simplexes keep their atoms; synthesized faces carry the empty atom
    set.  Idempotent: a closed model comes back structurally identical.
    """
    by_points: dict[tuple[int, ...], frozenset[int]] = {}
    for spec in model.simplexes:
        by_points[spec.points] = spec.atoms
    for spec in model.simplexes:
        pts = spec.points
        for size in range(1, len(pts)):
            for face in combinations(pts, size):
                by_points.setdefault(face, frozenset())
    ordered = sorted(by_points, key=lambda p: (len(p), p))
    specs = tuple(SimplexSpec(p, by_points[p]) for p in ordered)
    return SimplicialModel(model.ambient_dim, model.vertices, model.atom_names, specs)


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: tuple
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "ok"
        lines = [f"{v.kind}: {v.detail}" for v in self.violations]
        return "\n".join(lines)


def validate_combinatorial(model: SimplicialModel) -> ValidationReport:
    """Report missing faces, duplicate simplexes, and out-of-range indices."""
    found: list[Violation] = []
    nv = model.vertex_count
    seen: set[tuple[int, ...]] = set()
    for spec in model.simplexes:
        if spec.points in seen:
            found.append(
                Violation("duplicate-simplex", (spec.points,), f"{spec.points} listed twice")
            )
        seen.add(spec.points)
        bad = [p for p in spec.points if p < 0 or p >= nv]
        if bad:
            found.append(
                Violation(
                    "vertex-out-of-range",
                    (spec.points,),
                    f"{spec.points} refers to vertex {bad[0]} of {nv}",
                )
            )
        for i in spec.atoms:
            if i < 0 or i >= len(model.atom_names):
                found.append(
                    Violation(
                        "atom-out-of-range",
                        (spec.points,),
                        f"{spec.points} refers to atom index {i}",
                    )
                )
    for spec in model.simplexes:
        pts = spec.points
        for size in range(1, len(pts)):
            for face in combinations(pts, size):
                if face not in seen:
                    found.append(
                        Violation(
                            "missing-face",
                            (pts, face),
                            f"face {face} of {pts} is not in the complex",
                        )
                    )
    return ValidationReport(tuple(found))


def _barycentric_overlap(
    coords_a: np.ndarray,
    coords_b: np.ndarray,
    shared_a: np.ndarray,
    shared_b: np.ndarray,
    tol: float,
) -> float:
    """Largest barycentric mass outside the shared vertices over common points.

    Solves a small LP: find a point in both hulls maximizing the coordinate
    mass placed on non-shared vertices.  Zero (within tol) means the hulls
    meet exactly in their common face.
    """
    from scipy.optimize import linprog

    m = coords_a.shape[1]
    na, nb = coords_a.shape[0], coords_b.shape[0]
    # variables: [lambda_0..lambda_{na-1}, mu_0..mu_{nb-1}], all >= 0
    a_eq = np.zeros((m + 2, na + nb))
    a_eq[:m, :na] = coords_a.T
    a_eq[:m, na:] = -coords_b.T
    a_eq[m, :na] = 1.0
    a_eq[m + 1, na:] = 1.0
    b_eq = np.zeros(m + 2)
    b_eq[m] = 1.0
    b_eq[m + 1] = 1.0
    cost = np.zeros(na + nb)
    cost[:na][~shared_a] = -1.0
    cost[na:][~shared_b] = -1.0
    res = linprog(cost, A_eq=a_eq, b_eq=b_eq, bounds=(0.0, 1.0), method="highs")
    if not res.success:
        return 0.0  # hulls are disjoint
    return float(-res.fun)


def validate_geometric(model: SimplicialModel, tol: float = 1e-9) -> ValidationReport:
    """Check affine independence per simplex and pairwise hull intersections.

    The pairwise check runs only over maximal simplexes whose bounding boxes
    overlap, and decides conv(V1) ∩ conv(V2) = conv(V1 ∩ V2) with a linear
    feasibility program over barycentric coordinates.  O(n^2) in the worst
    case; meant for desk-scale models behind an explicit CLI flag.
    """
    if tol <= 0:
        raise ToleranceError(f"tolerance must be positive, got {tol}")
    found: list[Violation] = []
    verts = model.vertices

    for spec in model.simplexes:
        if spec.dim == 0:
            continue
        pts = np.asarray(spec.points)
        edges = verts[pts[1:]] - verts[pts[0]]
        rank = int(np.linalg.matrix_rank(edges, tol=tol))
        if rank < spec.dim:
            found.append(
                Violation(
                    "affine-dependence",
                    (spec.points,),
                    f"{spec.points} spans rank {rank}, expected {spec.dim}",
                )
            )

    point_sets = {spec.points for spec in model.simplexes}
    maximal = [
        spec
        for spec in model.simplexes
        if not any(
            other != spec.points and set(spec.points) <= set(other)
            for other in point_sets
        )
    ]
    boxes = []
    for spec in maximal:
        cs = verts[np.asarray(spec.points)]
        boxes.append((cs.min(axis=0), cs.max(axis=0)))
    for i in range(len(maximal)):
        for j in range(i + 1, len(maximal)):
            lo = np.maximum(boxes[i][0], boxes[j][0])
            hi = np.minimum(boxes[i][1], boxes[j][1])
            if np.any(lo > hi + tol):
                continue
            a, b = maximal[i], maximal[j]
            shared = set(a.points) & set(b.points)
            shared_a = np.array([p in shared for p in a.points])
            shared_b = np.array([p in shared for p in b.points])
            if shared_a.all() and shared_b.all():
                continue
            ca = verts[np.asarray(a.points)]
            cb = verts[np.asarray(b.points)]
            mass = _barycentric_overlap(ca, cb, shared_a, shared_b, tol)
            if mass > tol:
                found.append(
                    Violation(
                        "improper-intersection",
                        (a.points, b.points),
                        f"{a.points} and {b.points} intersect outside their "
                        f"common face (stray mass {mass:.3g})",
                    )
                )
    return ValidationReport(tuple(found))


@dataclass(frozen=True)
class CellTable:
    """Dense ids for the cells of a face-closed complex.

    Cells are numbered ascending by (dimension, lexicographic vertex list), so
    the numbering is identical across runs and independent of the order in
    which simplexes were listed.
    """

    cells: tuple[tuple[int, ...], ...]
    id_of: dict[tuple[int, ...], int] = field(repr=False)
    dim_of: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def max_dim(self) -> int:
        return int(self.dim_of.max()) if len(self.cells) else -1


def build_cell_table(model: SimplicialModel) -> CellTable:
    """Number the cells of a face-closed model in canonical order."""
    point_sets = {spec.points for spec in model.simplexes}
    for pts in point_sets:
        for size in range(1, len(pts)):
            for face in combinations(pts, size):
                if face not in point_sets:
                    raise NotClosedError(f"face {face} of {pts} is missing")
    cells = tuple(sorted(point_sets, key=lambda p: (len(p), p)))
    id_of = {pts: i for i, pts in enumerate(cells)}
    dim_of = np.array([len(p) - 1 for p in cells], dtype=np.int32)
    dim_of.setflags(write=False)
    return CellTable(cells, id_of, dim_of)


def barycentre(model: SimplicialModel, cells: CellTable, cell: int) -> np.ndarray:
    """Arithmetic mean of the vertex coordinates of a cell."""
    if cell < 0 or cell >= len(cells):
        raise UnknownCellError(f"cell id {cell} out of range 0..{len(cells) - 1}")
    pts = np.asarray(cells.cells[cell])
    return model.vertices[pts].mean(axis=0)
