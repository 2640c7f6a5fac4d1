/**
 * Combinatorics shared with the checker: face closure and the canonical
 * cell numbering (ascending by dimension, then lexicographic vertex list).
 * Results arrays index cells in exactly this order, so the reconstruction
 * here must agree with the tool that produced them.
 */

import { ModelFile, SchemaError } from "./format.js";

export interface CellTable {
  /** Sorted vertex lists, canonical order; index = cell id. */
  readonly cells: readonly (readonly number[])[];
  /** Atom names per cell (union of the atoms attached to the listed simplexes). */
  readonly atoms: readonly (readonly string[])[];
}

function key(points: readonly number[]): string {
  return points.join(",");
}

function compareCells(a: readonly number[], b: readonly number[]): number {
  if (a.length !== b.length) return a.length - b.length;
  for (let i = 0; i < a.length; i++) {
    if (a[i] !== b[i]) return a[i] - b[i];
  }
  return 0;
}

function* properSubsets(points: readonly number[]): Generator<number[]> {
  const n = points.length;
  for (let mask = 1; mask < (1 << n) - 1; mask++) {
    const subset: number[] = [];
    for (let i = 0; i < n; i++) {
      if (mask & (1 << i)) subset.push(points[i]);
    }
    yield subset;
  }
}

/** Canonicalize, face-close and number the cells of a parsed model file. */
export function buildCellTable(model: ModelFile): CellTable {
  const atomsByCell = new Map<string, Set<string>>();
  const pointsByKey = new Map<string, number[]>();

  const add = (points: number[], atoms: Iterable<string>) => {
    const k = key(points);
    if (!pointsByKey.has(k)) {
      pointsByKey.set(k, points);
      atomsByCell.set(k, new Set());
    }
    const set = atomsByCell.get(k)!;
    for (const a of atoms) set.add(a);
  };

  for (const spec of model.simplexes) {
    const points = [...spec.points].sort((x, y) => x - y);
    for (let i = 1; i < points.length; i++) {
      if (points[i] === points[i - 1]) {
        throw new SchemaError(`simplex [${points.join(", ")}] repeats a vertex`);
      }
    }
    const atomNames = spec.atoms.map((a) =>
      typeof a === "number" ? model.atomNames[a] : a,
    );
    add(points, atomNames);
    for (const face of properSubsets(points)) add(face, []);
  }

  const cells = [...pointsByKey.values()].sort(compareCells);
  const atoms = cells.map((c) => [...atomsByCell.get(key(c))!].sort());
  return { cells, atoms };
}
