"""Finite Kripke encoding of a simplicial model.

States are cells; the accessibility relation is the full transitive proper
face relation, stored irreflexively in CSR form in both directions (faces and
cofaces).  Reflexivity is applied by the set-level ``out_set``/``in_set``
operators, which is what every consumer of the relation needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import LengthMismatchError, NotClosedError, UnknownAtomError
from .geometry import CellTable, SimplicialModel


class SatSet:
    """Satisfaction set over the cells of one model: a fixed-length bit vector.

    Value semantics: operators return new sets, the payload is read-only.
    """

    __slots__ = ("bits",)

    def __init__(self, bits: np.ndarray):
        bits = np.asarray(bits, dtype=bool)
        bits.setflags(write=False)
        self.bits = bits

    @classmethod
    def empty(cls, n: int) -> "SatSet":
        return cls(np.zeros(n, dtype=bool))

    @classmethod
    def full(cls, n: int) -> "SatSet":
        return cls(np.ones(n, dtype=bool))

    @classmethod
    def of(cls, n: int, ids) -> "SatSet":
        bits = np.zeros(n, dtype=bool)
        bits[list(ids)] = True
        return cls(bits)

    def __len__(self) -> int:
        return self.bits.shape[0]

    def _check(self, other: "SatSet") -> None:
        if len(self) != len(other):
            raise LengthMismatchError(f"set lengths differ: {len(self)} vs {len(other)}")

    def __and__(self, other: "SatSet") -> "SatSet":
        self._check(other)
        return SatSet(self.bits & other.bits)

    def __or__(self, other: "SatSet") -> "SatSet":
        self._check(other)
        return SatSet(self.bits | other.bits)

    def __xor__(self, other: "SatSet") -> "SatSet":
        self._check(other)
        return SatSet(self.bits ^ other.bits)

    def __invert__(self) -> "SatSet":
        return SatSet(~self.bits)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SatSet)
            and len(self) == len(other)
            and bool(np.array_equal(self.bits, other.bits))
        )

    def __hash__(self):
        return hash((len(self), self.bits.tobytes()))

    def __contains__(self, cell: int) -> bool:
        return bool(self.bits[cell])

    def ids(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def count(self) -> int:
        return int(self.bits.sum())

    def issubset(self, other: "SatSet") -> bool:
        self._check(other)
        return bool(np.all(~self.bits | other.bits))

    def __repr__(self):
        return f"SatSet({self.count()}/{len(self)})"


@dataclass(frozen=True)
class KripkeModel:
    """Cells plus the proper-face relation in both directions and atom bitsets.

    ``out_*`` rows list the proper cofaces of each cell (all cells the cell is
    a proper face of); ``in_*`` rows list the proper faces.  Both relations are
    irreflexive and transitive by construction.  Immutable after build.
    """

    n: int
    max_dim: int
    out_indptr: np.ndarray = field(repr=False)
    out_indices: np.ndarray = field(repr=False)
    in_indptr: np.ndarray = field(repr=False)
    in_indices: np.ndarray = field(repr=False)
    atoms: dict[str, SatSet] = field(repr=False)
    cell_table: CellTable = field(repr=False)

    @property
    def edge_count(self) -> int:
        return int(self.out_indices.shape[0])

    def out_neighbors(self, cell: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[cell] : self.out_indptr[cell + 1]]

    def in_neighbors(self, cell: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[cell] : self.in_indptr[cell + 1]]

    def atom_set(self, name: str) -> SatSet:
        try:
            return self.atoms[name]
        except KeyError:
            raise UnknownAtomError(
                f"atom {name!r} is not defined by the model"
            ) from None

    def _check_len(self, s: SatSet) -> None:
        if len(s) != self.n:
            raise LengthMismatchError(f"set length {len(s)} != cell count {self.n}")


def build_kripke(cells: CellTable, model: SimplicialModel) -> KripkeModel:
    """Build the Kripke encoding by enumerating vertex subsets of each cell.

    Time and memory are linear in the number of cells plus face-relation
    edges.  Raises NotClosedError when a subset of a cell is not itself a
    cell (the model must be face-closed).
    """
    n = len(cells)
    id_of = cells.id_of
    in_counts = np.array(
        [(1 << len(pts)) - 2 for pts in cells.cells], dtype=np.int64
    )
    in_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(in_counts, out=in_indptr[1:])
    in_indices = np.empty(in_indptr[-1], dtype=np.int32)
    for cid, pts in enumerate(cells.cells):
        faces = []
        for size in range(1, len(pts)):
            for sub in combinations(pts, size):
                fid = id_of.get(sub)
                if fid is None:
                    raise NotClosedError(f"face {sub} of {pts} is missing")
                faces.append(fid)
        faces.sort()
        in_indices[in_indptr[cid] : in_indptr[cid + 1]] = faces

    # transpose: out-neighborhoods are the reverse of the in-neighborhoods
    out_counts = np.bincount(in_indices, minlength=n).astype(np.int64)
    out_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(out_counts, out=out_indptr[1:])
    out_indices = np.empty_like(in_indices)
    cursor = out_indptr[:-1].copy()
    for cid in range(n):
        row = in_indices[in_indptr[cid] : in_indptr[cid + 1]]
        out_indices[cursor[row]] = cid
        cursor[row] += 1

    atoms: dict[str, SatSet] = {}
    atom_bits = {
        name: np.zeros(n, dtype=bool) for name in model.atom_names
    }
    for spec in model.simplexes:
        if not spec.atoms:
            continue
        cid = id_of[spec.points]
        for ai in spec.atoms:
            atom_bits[model.atom_names[ai]][cid] = True
    for name, bits in atom_bits.items():
        atoms[name] = SatSet(bits)

    for arr in (in_indptr, in_indices, out_indptr, out_indices):
        arr.setflags(write=False)
    return KripkeModel(
        n=n,
        max_dim=cells.max_dim,
        out_indptr=out_indptr,
        out_indices=out_indices,
        in_indptr=in_indptr,
        in_indices=in_indices,
        atoms=atoms,
        cell_table=cells,
    )


def _gather(indptr: np.ndarray, indices: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """All CSR entries of the given rows, concatenated (with repetitions)."""
    if rows.size == 0:
        return np.empty(0, dtype=indices.dtype)
    starts = indptr[rows]
    counts = indptr[rows + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=indices.dtype)
    offsets = np.cumsum(counts) - counts
    flat = np.arange(total, dtype=np.int64) - np.repeat(offsets, counts)
    return indices[np.repeat(starts, counts) + flat]


def _neighbor_bits(indptr, indices, members: np.ndarray) -> np.ndarray:
    hit = np.zeros(indptr.shape[0] - 1, dtype=bool)
    hit[_gather(indptr, indices, np.flatnonzero(members))] = True
    return hit


def out_set(model: KripkeModel, s: SatSet, reflexive: bool = True) -> SatSet:
    """Union of the out-neighborhoods of the members of ``s``."""
    model._check_len(s)
    bits = _neighbor_bits(model.out_indptr, model.out_indices, s.bits)
    if reflexive:
        bits |= s.bits
    return SatSet(bits)


def in_set(model: KripkeModel, s: SatSet, reflexive: bool = True) -> SatSet:
    """Union of the in-neighborhoods of the members of ``s``."""
    model._check_len(s)
    bits = _neighbor_bits(model.in_indptr, model.in_indices, s.bits)
    if reflexive:
        bits |= s.bits
    return SatSet(bits)
