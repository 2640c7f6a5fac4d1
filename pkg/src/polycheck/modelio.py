"""Readers and writers for model and results files, plus the OBJ importer.

The model wire format is JSON: ``formatVersion`` (1), ``coordinates`` (list
of equal-length number lists, the 0-cells), ``atomNames`` (list of strings),
``simplexes`` (list of ``{"points": [...], "atoms": [...]}`` where atoms are
indices into ``atomNames`` or atom names).  The loader canonicalizes each
simplex and face-closes the complex.  Serialization is deterministic: fixed
key order, no whitespace variance, values in canonical cell order.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    DuplicateSimplexError,
    MalformedLineError,
    NonTriangularFaceError,
    SchemaError,
    VertexIndexError,
)
from .geometry import (
    SimplexSpec,
    SimplicialModel,
    canonicalize_simplex,
    face_closure,
)

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def content_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _require(mapping, key, kind, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise SchemaError(f"{where}: missing key {key!r}")
    value = mapping[key]
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: {key!r} must be {kind.__name__}")
    return value


def load_model_json(data: bytes | str) -> SimplicialModel:
    """Parse a model file and return the face-closed model."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    coords = _require(doc, "coordinates", list, "model")
    atom_names = _require(doc, "atomNames", list, "model")
    raw_simplexes = _require(doc, "simplexes", list, "model")
    if not coords:
        raise SchemaError("model: empty coordinate list")
    widths = {len(row) if isinstance(row, list) else -1 for row in coords}
    if len(widths) != 1 or -1 in widths or 0 in widths:
        raise SchemaError("model: coordinates must be equal-length number lists")
    if any(not isinstance(name, str) for name in atom_names):
        raise SchemaError("model: atomNames must be strings")
    if len(set(atom_names)) != len(atom_names):
        raise SchemaError("model: atomNames must be unique")
    vertices = np.asarray(coords, dtype=np.float64)
    atom_index = {name: i for i, name in enumerate(atom_names)}

    specs = []
    seen: set[tuple[int, ...]] = set()
    for k, entry in enumerate(raw_simplexes):
        where = f"simplexes[{k}]"
        raw_points = _require(entry, "points", list, where)
        for p in raw_points:
            if not isinstance(p, int):
                raise SchemaError(f"{where}: points must be integers")
            if p < 0 or p >= len(coords):
                raise VertexIndexError(
                    f"{where}: vertex {p} out of range 0..{len(coords) - 1}"
                )
        points = canonicalize_simplex(raw_points)
        if points in seen:
            raise DuplicateSimplexError(f"{where}: {list(points)} already listed")
        seen.add(points)
        atoms = set()
        for a in entry.get("atoms", []):
            if isinstance(a, str):
                if a not in atom_index:
                    raise SchemaError(f"{where}: unknown atom name {a!r}")
                atoms.add(atom_index[a])
            elif isinstance(a, int) and 0 <= a < len(atom_names):
                atoms.add(a)
            else:
                raise SchemaError(f"{where}: bad atom reference {a!r}")
        specs.append(SimplexSpec(points, frozenset(atoms)))

    model = SimplicialModel(
        ambient_dim=vertices.shape[1],
        vertices=vertices,
        atom_names=tuple(atom_names),
        simplexes=tuple(specs),
    )
    return face_closure(model)


def save_model_json(model: SimplicialModel) -> bytes:
    """Serialize a model deterministically (canonical simplex order)."""
    ordered = sorted(model.simplexes, key=lambda s: (len(s.points), s.points))
    doc = {
        "formatVersion": FORMAT_VERSION,
        "coordinates": [list(row) for row in model.vertices.tolist()],
        "atomNames": list(model.atom_names),
        "simplexes": [
            {"points": list(s.points), "atoms": sorted(s.atoms)} for s in ordered
        ],
    }
    return json.dumps(doc, separators=(",", ":")).encode("utf-8")


@dataclass(frozen=True)
class ResultsDocument:
    """Checked properties: one boolean per cell, in canonical cell order."""

    model_hash: str
    cell_count: int
    results: tuple[tuple[str, tuple[bool, ...]], ...]

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.results)


def save_results_json(doc: ResultsDocument) -> bytes:
    labels = [label for label, _ in doc.results]
    if len(set(labels)) != len(labels):
        raise SchemaError("results: labels must be unique")
    for label, values in doc.results:
        if len(values) != doc.cell_count:
            raise SchemaError(
                f"results: {label!r} has {len(values)} values, "
                f"expected {doc.cell_count}"
            )
    payload = {
        "formatVersion": FORMAT_VERSION,
        "modelHash": doc.model_hash,
        "cellCount": doc.cell_count,
        "results": [
            {"label": label, "values": [bool(v) for v in values]}
            for label, values in doc.results
        ],
    }
    return json.dumps(payload, separators=(",", ":")).encode("utf-8")


def load_results_json(data: bytes | str) -> ResultsDocument:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    model_hash = _require(doc, "modelHash", str, "results")
    cell_count = _require(doc, "cellCount", int, "results")
    entries = _require(doc, "results", list, "results")
    results = []
    for k, entry in enumerate(entries):
        where = f"results[{k}]"
        label = _require(entry, "label", str, where)
        values = _require(entry, "values", list, where)
        if len(values) != cell_count:
            raise SchemaError(f"{where}: {len(values)} values, expected {cell_count}")
        results.append((label, tuple(bool(v) for v in values)))
    labels = [label for label, _ in results]
    if len(set(labels)) != len(labels):
        raise SchemaError("results: labels must be unique")
    return ResultsDocument(model_hash, cell_count, tuple(results))


def quantize_channel(value: float, levels: int) -> int:
    """Uniform bins over [0, 1]; the last bin includes 1.0."""
    level = int(np.floor(value * levels))
    return min(max(level, 0), levels - 1)


def import_obj(data: bytes | str, levels: int = 4) -> SimplicialModel:
    """Import a triangle mesh with per-vertex colors as a 2-dimensional model.

    Each cell's color is the arithmetic mean of its own vertices' RGB values;
    each channel is quantized to ``levels`` bins, producing atoms ``r0``,
    ``g0``, ``b0`` and so on.  Vertices without color default to black.
    Records other than ``v`` and ``f`` are ignored with a warning.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    positions: list[list[float]] = []
    colors: list[list[float]] = []
    triangles: list[tuple[int, ...]] = []
    ignored: set[str] = set()

    def vertex_index(token: str, lineno: int) -> int:
        head = token.split("/")[0]
        try:
            idx = int(head)
        except ValueError:
            raise MalformedLineError(f"bad vertex reference {token!r}", lineno) from None
        if idx < 0:
            idx = len(positions) + idx
        else:
            idx -= 1
        if idx < 0 or idx >= len(positions):
            raise MalformedLineError(f"vertex reference {token!r} out of range", lineno)
        return idx

    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        record, args = fields[0], fields[1:]
        if record == "v":
            if len(args) not in (3, 6):
                raise MalformedLineError(
                    f"vertex record needs 3 or 6 numbers, got {len(args)}", lineno
                )
            try:
                numbers = [float(a) for a in args]
            except ValueError:
                raise MalformedLineError("vertex record is not numeric", lineno) from None
            positions.append(numbers[:3])
            colors.append(numbers[3:] if len(numbers) == 6 else [0.0, 0.0, 0.0])
        elif record == "f":
            if len(args) != 3:
                raise NonTriangularFaceError(
                    f"face with {len(args)} vertices at line {lineno}; "
                    "only triangles are supported"
                )
            triangles.append(tuple(vertex_index(a, lineno) for a in args))
        else:
            if record not in ignored:
                ignored.add(record)
                logger.warning("ignoring OBJ record type %r", record)

    atom_names = tuple(
        f"{channel}{level}" for channel in "rgb" for level in range(levels)
    )
    color_arr = np.asarray(colors, dtype=np.float64) if colors else np.zeros((0, 3))

    cells: dict[tuple[int, ...], frozenset[int]] = {}

    def atoms_for(points: tuple[int, ...]) -> frozenset[int]:
        mean = color_arr[list(points)].mean(axis=0)
        return frozenset(
            channel * levels + quantize_channel(mean[channel], levels)
            for channel in range(3)
        )

    for tri in triangles:
        points = canonicalize_simplex(tri)
        for size in range(1, 4):
            for cell in combinations(points, size):
                if cell not in cells:
                    cells[cell] = atoms_for(cell)

    ordered = sorted(cells, key=lambda p: (len(p), p))
    return SimplicialModel(
        ambient_dim=3,
        vertices=np.asarray(positions, dtype=np.float64),
        atom_names=atom_names,
        simplexes=tuple(SimplexSpec(p, cells[p]) for p in ordered),
    )
