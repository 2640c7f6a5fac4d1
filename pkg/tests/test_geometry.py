"""Tests for simplicial model construction, validation and cell numbering."""

import random
from itertools import combinations, permutations

import numpy as np
import pytest

from polycheck import (
    SimplexSpec,
    SimplicialModel,
    barycentre,
    build_cell_table,
    canonicalize_simplex,
    face_closure,
    validate_combinatorial,
    validate_geometric,
)
from polycheck.errors import (
    DuplicateVertexError,
    EmptySimplexError,
    NotClosedError,
    ToleranceError,
    UnknownCellError,
)

from corpus import flood_example, path_example, random_closed_model


def simple_model(specs, n_vertices=None, ambient=2, atom_names=("a",)):
    if n_vertices is None:
        n_vertices = 1 + max(p for s in specs for p in s.points)
    coords = np.array(
        [[float(i), float(i * i % 7)] for i in range(n_vertices)], dtype=np.float64
    )
    return SimplicialModel(ambient, coords, atom_names, tuple(specs))


class TestCanonicalize:
    def test_sorts(self):
        assert canonicalize_simplex([2, 0, 1]) == (0, 1, 2)

    def test_duplicate(self):
        with pytest.raises(DuplicateVertexError):
            canonicalize_simplex([0, 0, 1])

    def test_empty(self):
        with pytest.raises(EmptySimplexError):
            canonicalize_simplex([])


class TestFaceClosure:
    def test_single_triangle(self):
        model = simple_model([SimplexSpec((0, 1, 2))])
        closed = face_closure(model)
        assert len(closed.simplexes) == 7
        dims = sorted(s.dim for s in closed.simplexes)
        assert dims == [0, 0, 0, 1, 1, 1, 2]

    @pytest.mark.parametrize("dim", [0, 1, 2, 3])
    def test_single_simplex_size(self, dim):
        model = simple_model([SimplexSpec(tuple(range(dim + 1)))])
        assert len(face_closure(model).simplexes) == 2 ** (dim + 1) - 1

    def test_strip_of_four_triangles(self):
        # triangles ABC, BCD, CDE, DEF over six vertices
        model = simple_model(
            [
                SimplexSpec((0, 1, 2)),
                SimplexSpec((1, 2, 3)),
                SimplexSpec((2, 3, 4)),
                SimplexSpec((3, 4, 5)),
            ]
        )
        closed = face_closure(model)
        assert len(closed.simplexes) == 19
        by_dim = {d: sum(1 for s in closed.simplexes if s.dim == d) for d in range(3)}
        assert by_dim == {0: 6, 1: 9, 2: 4}

    def test_idempotent(self):
        model = simple_model(
            [SimplexSpec((0, 1, 2), frozenset({0})), SimplexSpec((1, 2, 3))]
        )
        once = face_closure(model)
        twice = face_closure(once)
        assert once.simplexes == twice.simplexes

    def test_listed_faces_keep_atoms(self):
        model = simple_model(
            [SimplexSpec((0, 1, 2)), SimplexSpec((0, 1), frozenset({0}))]
        )
        closed = face_closure(model)
        atoms = {s.points: s.atoms for s in closed.simplexes}
        assert atoms[(0, 1)] == frozenset({0})
        assert atoms[(1, 2)] == frozenset()


class TestValidateCombinatorial:
    def test_closed_ok(self):
        model = face_closure(simple_model([SimplexSpec((0, 1, 2))]))
        assert validate_combinatorial(model).ok

    def test_missing_face(self):
        model = simple_model(
            [SimplexSpec((0, 1, 2)), SimplexSpec((0, 1)), SimplexSpec((0, 2)),
             SimplexSpec((1, 2)), SimplexSpec((0,)), SimplexSpec((1,))]
        )  # vertex (2,) missing
        report = validate_combinatorial(model)
        assert not report.ok
        assert any(v.kind == "missing-face" for v in report.violations)

    def test_duplicate(self):
        model = simple_model(
            [SimplexSpec((0, 1)), SimplexSpec((0, 1)),
             SimplexSpec((0,)), SimplexSpec((1,))]
        )
        report = validate_combinatorial(model)
        assert any(v.kind == "duplicate-simplex" for v in report.violations)

    def test_vertex_out_of_range(self):
        model = simple_model([SimplexSpec((0, 99))], n_vertices=4)
        report = validate_combinatorial(model)
        assert any(v.kind == "vertex-out-of-range" for v in report.violations)


def hull_contains(vertices, point, tol=1e-12):
    """Barycentric membership test by least squares over the affine hull."""
    vs = np.asarray(vertices, dtype=float)
    k = vs.shape[0]
    a = np.vstack([vs.T, np.ones(k)])
    b = np.concatenate([np.asarray(point, dtype=float), [1.0]])
    coeffs, residual, *_ = np.linalg.lstsq(a, b, rcond=None)
    reconstructed = a @ coeffs
    if np.linalg.norm(reconstructed - b) > 1e-9:
        return False
    return bool(np.all(coeffs >= -tol))


class TestValidateGeometric:
    def test_tolerance_must_be_positive(self):
        model = face_closure(simple_model([SimplexSpec((0, 1))]))
        with pytest.raises(ToleranceError):
            validate_geometric(model, tol=0.0)

    def test_collinear_triangle_flagged(self):
        coords = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
        model = face_closure(
            SimplicialModel(2, coords, ("a",), (SimplexSpec((0, 1, 2)),))
        )
        report = validate_geometric(model)
        assert any(v.kind == "affine-dependence" for v in report.violations)

    def test_shared_edge_is_fine(self):
        assert validate_geometric(flood_example().model).ok
        assert validate_geometric(path_example().model).ok

    def test_overlapping_triangles_flagged(self):
        # interiors overlap, no shared vertices
        coords = np.array(
            [[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [0.5, 0.5], [2.5, 0.5], [0.5, 2.5]]
        )
        model = face_closure(
            SimplicialModel(
                2, coords, ("a",),
                (SimplexSpec((0, 1, 2)), SimplexSpec((3, 4, 5))),
            )
        )
        report = validate_geometric(model)
        assert any(v.kind == "improper-intersection" for v in report.violations)

        # independent confirmation: grid-sample a point inside both hulls
        t1, t2 = coords[[0, 1, 2]], coords[[3, 4, 5]]
        samples = [
            (x, y) for x in np.linspace(0, 2.5, 26) for y in np.linspace(0, 2.5, 26)
        ]
        common = [
            p for p in samples if hull_contains(t1, p) and hull_contains(t2, p)
        ]
        assert common, "sampling should find a point in both interiors"

    def test_touching_without_shared_vertex_flagged(self):
        # vertex 3 lies in the middle of edge (0, 1) without being shared
        coords = np.array(
            [[0.0, 0.0], [2.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.5, -1.0], [1.5, -1.0]]
        )
        model = face_closure(
            SimplicialModel(
                2, coords, ("a",),
                (SimplexSpec((0, 1, 2)), SimplexSpec((3, 4, 5))),
            )
        )
        report = validate_geometric(model)
        assert any(v.kind == "improper-intersection" for v in report.violations)


class TestCellTable:
    def test_single_triangle_order(self):
        model = face_closure(simple_model([SimplexSpec((0, 1, 2))]))
        cells = build_cell_table(model)
        assert cells.cells == ((0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2))
        assert list(cells.dim_of) == [0, 0, 0, 1, 1, 1, 2]

    def test_flood_example_has_eleven_cells(self):
        assert len(flood_example().cells) == 11

    def test_requires_closure(self):
        model = simple_model([SimplexSpec((0, 1)), SimplexSpec((0,))])
        with pytest.raises(NotClosedError):
            build_cell_table(model)

    def test_order_independent_of_listing(self):
        base = face_closure(simple_model([SimplexSpec((0, 1, 2)), SimplexSpec((1, 2, 3))]))
        reference = build_cell_table(base)
        rng = random.Random(7)
        specs = list(base.simplexes)
        for _ in range(5):
            rng.shuffle(specs)
            permuted = SimplicialModel(
                base.ambient_dim, base.vertices, base.atom_names, tuple(specs)
            )
            assert build_cell_table(permuted).cells == reference.cells

    def test_poset_laws_brute_force(self):
        rng = random.Random(13)
        for _ in range(20):
            model = random_closed_model(rng, max_cells=200, vertex_pool=8)
            cells = build_cell_table(model).cells
            le = {
                (a, b)
                for a in cells
                for b in cells
                if set(a) <= set(b)
            }
            for a in cells:
                assert (a, a) in le
            for a, b in le:
                if (b, a) in le:
                    assert a == b
            for a, b in le:
                for c in cells:
                    if (b, c) in le:
                        assert (a, c) in le


class TestBarycentre:
    def test_vertex(self):
        named = flood_example()
        cid = named.cell_id(("A",))
        assert np.allclose(barycentre(named.model, named.cells, cid), [0, 1])

    def test_edge_midpoint(self):
        named = flood_example()
        cid = named.cell_id(("B", "D"))
        assert np.allclose(barycentre(named.model, named.cells, cid), [0.5, 0.0])

    def test_triangle(self):
        coords = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        model = face_closure(
            SimplicialModel(2, coords, (), (SimplexSpec((0, 1, 2)),))
        )
        cells = build_cell_table(model)
        cid = cells.id_of[(0, 1, 2)]
        assert np.allclose(barycentre(model, cells, cid), [1 / 3, 1 / 3])

    def test_unknown_cell(self):
        named = flood_example()
        with pytest.raises(UnknownCellError):
            barycentre(named.model, named.cells, 99)
