"""Benchmark generator: a 3D grid of rooms joined by corridors.

Rooms are axis-aligned boxes on a regular grid, each split into five
tetrahedra; corridors are boxes of the same cross-section filling the gap
between face-adjacent rooms.  Adjacent boxes use mirrored tetrahedron splits
so shared faces carry the same diagonal and the union is a valid simplicial
complex.  Rooms on the outer boundary are green (atom ``G``), the central
room is red (``R``), the remaining rooms are white or black (``W``/``B``)
drawn from the seeded generator.  Corridor cells that are not part of a room
carry the ``corridor`` atom, so room atoms and the corridor atom never
overlap.

Degenerate case: a 1x1x1 grid yields one red room, no corridors and no green
rooms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import InvalidParamsError
from .geometry import SimplexSpec, SimplicialModel

ATOM_NAMES = ("G", "W", "B", "R", "corridor")
_ATOM_INDEX = {name: i for i, name in enumerate(ATOM_NAMES)}

GridPos = tuple[int, int, int]


@dataclass(frozen=True)
class MazeParams:
    grid: GridPos
    black_fraction: float = 0.3
    seed: int = 0
    room_size: float = 1.0
    corridor_length: float = 0.5
    corridor_fraction: float = 1.0

    def validate(self) -> None:
        if len(self.grid) != 3 or any(g < 1 for g in self.grid):
            raise InvalidParamsError(f"grid must be three positives, got {self.grid}")
        if not 0.0 <= self.black_fraction <= 1.0:
            raise InvalidParamsError("black_fraction must be in [0, 1]")
        if not 0.0 <= self.corridor_fraction <= 1.0:
            raise InvalidParamsError("corridor_fraction must be in [0, 1]")
        if self.room_size <= 0 or self.corridor_length <= 0:
            raise InvalidParamsError("room and corridor sizes must be positive")


@dataclass(frozen=True)
class Room:
    pos: GridPos
    color: str
    tets: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Corridor:
    ends: tuple[GridPos, GridPos]
    tets: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MazeLayout:
    """Ground truth for oracle computations: the room graph and colors."""

    grid: GridPos
    rooms: dict[GridPos, Room]
    corridors: tuple[Corridor, ...]

    def neighbors(self) -> dict[GridPos, list[GridPos]]:
        adj: dict[GridPos, list[GridPos]] = {pos: [] for pos in self.rooms}
        for corridor in self.corridors:
            a, b = corridor.ends
            adj[a].append(b)
            adj[b].append(a)
        return adj


def _room_colors(params: MazeParams, rng: random.Random) -> dict[GridPos, str]:
    nx, ny, nz = params.grid
    center = (nx // 2, ny // 2, nz // 2)
    colors: dict[GridPos, str] = {}
    for pos in product(range(nx), range(ny), range(nz)):
        i, j, k = pos
        if pos == center:
            colors[pos] = "R"
        elif i in (0, nx - 1) or j in (0, ny - 1) or k in (0, nz - 1):
            colors[pos] = "G"
        else:
            colors[pos] = "B" if rng.random() < params.black_fraction else "W"
    return colors


def _candidate_corridors(grid: GridPos):
    nx, ny, nz = grid
    for i, j, k in product(range(nx), range(ny), range(nz)):
        if i + 1 < nx:
            yield (i, j, k), (i + 1, j, k)
        if j + 1 < ny:
            yield (i, j, k), (i, j + 1, k)
        if k + 1 < nz:
            yield (i, j, k), (i, j, k + 1)


def _box_tets(corner_planes, parity: int):
    """Five-tetra split of a box; corners given as plane-index triples.

    The central tetrahedron uses the corners whose coordinate-parity sum
    matches ``parity``; flipping the parity mirrors the split, which is what
    makes the splits of face-adjacent boxes agree on their shared diagonal.
    """
    (x0, x1), (y0, y1), (z0, z1) = corner_planes
    planes = ((x0, x1), (y0, y1), (z0, z1))

    def corner(bits):
        return tuple(planes[axis][bit] for axis, bit in enumerate(bits))

    central = [bits for bits in product((0, 1), repeat=3) if sum(bits) % 2 == parity]
    tets = [tuple(corner(bits) for bits in central)]
    for bits in product((0, 1), repeat=3):
        if sum(bits) % 2 == parity:
            continue
        flips = [tuple(b ^ (axis == a) for a, b in enumerate(bits)) for axis in range(3)]
        tets.append(tuple(corner(b) for b in [bits] + flips))
    return tets


def generate_maze(params: MazeParams) -> tuple[SimplicialModel, MazeLayout]:
    """Build the maze model and its ground-truth layout.

    Deterministic for fixed parameters: vertex numbering, simplex order and
    all random draws depend only on the parameter values.
    """
    params.validate()
    rng = random.Random(params.seed)
    colors = _room_colors(params, rng)
    corridors = [
        pair
        for pair in _candidate_corridors(params.grid)
        if rng.random() < params.corridor_fraction
    ]

    pitch = params.room_size + params.corridor_length

    def plane_coord(p: int) -> float:
        return (p // 2) * pitch + (p % 2) * params.room_size

    vertex_ids: dict[GridPos, int] = {}

    def vertex(plane_pos: GridPos) -> int:
        vid = vertex_ids.get(plane_pos)
        if vid is None:
            vid = len(vertex_ids)
            vertex_ids[plane_pos] = vid
        return vid

    def tet_points(tet) -> tuple[int, ...]:
        return tuple(sorted(vertex(c) for c in tet))

    cells: dict[tuple[int, ...], set[int]] = {}

    def mark(tets, atom: int, room_pass: bool):
        marked = []
        for tet in tets:
            points = tet_points(tet)
            marked.append(points)
            for size in range(1, 5):
                for cell in combinations(points, size):
                    atoms = cells.setdefault(cell, set())
                    if room_pass or not atoms:
                        atoms.add(atom)
        return tuple(marked)

    rooms: dict[GridPos, Room] = {}
    for pos in sorted(colors):
        i, j, k = pos
        box_pos = (2 * i, 2 * j, 2 * k)
        planes = tuple((p, p + 1) for p in box_pos)
        tets = _box_tets(planes, parity=sum(box_pos) % 2)
        marked = mark(tets, _ATOM_INDEX[colors[pos]], room_pass=True)
        rooms[pos] = Room(pos, colors[pos], marked)

    built_corridors: list[Corridor] = []
    for a, b in corridors:
        axis = next(ax for ax in range(3) if a[ax] != b[ax])
        planes = []
        box_pos = []
        for ax in range(3):
            if ax == axis:
                planes.append((2 * a[ax] + 1, 2 * a[ax] + 2))
                box_pos.append(2 * a[ax] + 1)
            else:
                planes.append((2 * a[ax], 2 * a[ax] + 1))
                box_pos.append(2 * a[ax])
        tets = _box_tets(tuple(planes), parity=sum(box_pos) % 2)
        marked = mark(tets, _ATOM_INDEX["corridor"], room_pass=False)
        built_corridors.append(Corridor((a, b), marked))

    coords = np.zeros((len(vertex_ids), 3), dtype=np.float64)
    for plane_pos, vid in vertex_ids.items():
        coords[vid] = [plane_coord(p) for p in plane_pos]

    ordered = sorted(cells, key=lambda p: (len(p), p))
    model = SimplicialModel(
        ambient_dim=3,
        vertices=coords,
        atom_names=ATOM_NAMES,
        simplexes=tuple(SimplexSpec(p, frozenset(cells[p])) for p in ordered),
    )
    layout = MazeLayout(params.grid, rooms, tuple(built_corridors))
    return model, layout
