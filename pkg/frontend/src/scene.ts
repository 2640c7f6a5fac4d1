/**
 * Scene assembly: a model file plus a matching results file become an
 * immutable SceneModel with cells grouped by dimension and per-label
 * boolean arrays aligned to the canonical cell order.
 */

import { buildCellTable } from "./complex.js";
import {
  HashMismatchError,
  SchemaError,
  parseModelFile,
  parseResultsFile,
  sha256Hex,
} from "./format.js";

export interface SceneModel {
  readonly cellCount: number;
  /** Vertex coordinates padded to 3D. */
  readonly coordinates: readonly (readonly [number, number, number])[];
  /** Canonical cells: sorted vertex index lists; index = cell id. */
  readonly cells: readonly (readonly number[])[];
  /** Atom names per cell. */
  readonly atoms: readonly (readonly string[])[];
  /** Cell ids grouped by dimension 0..3. */
  readonly byDim: readonly [
    readonly number[],
    readonly number[],
    readonly number[],
    readonly number[],
  ];
  readonly labels: readonly string[];
  readonly results: ReadonlyMap<string, readonly boolean[]>;
}

function pad3(row: readonly number[]): [number, number, number] {
  return [row[0] ?? 0, row[1] ?? 0, row[2] ?? 0];
}

export async function loadScene(
  modelBytes: Uint8Array,
  resultsBytes: Uint8Array,
): Promise<SceneModel> {
  const model = parseModelFile(modelBytes);
  const results = parseResultsFile(resultsBytes);

  const digest = await sha256Hex(modelBytes);
  if (digest !== results.modelHash) {
    throw new HashMismatchError(
      `results were computed from a different model file ` +
        `(expected ${results.modelHash.slice(0, 12)}…, loaded ${digest.slice(0, 12)}…)`,
    );
  }

  if (model.coordinates[0].length > 3) {
    throw new SchemaError(
      `cannot render ${model.coordinates[0].length}-dimensional coordinates`,
    );
  }
  const table = buildCellTable(model);
  if (table.cells.length !== results.cellCount) {
    throw new SchemaError(
      `results expect ${results.cellCount} cells, model has ${table.cells.length}`,
    );
  }
  const byDim: [number[], number[], number[], number[]] = [[], [], [], []];
  table.cells.forEach((cell, id) => {
    const dim = cell.length - 1;
    if (dim > 3) {
      throw new SchemaError(`cell of dimension ${dim} cannot be rendered`);
    }
    byDim[dim].push(id);
  });

  const valueMap = new Map<string, readonly boolean[]>();
  for (const entry of results.results) {
    valueMap.set(entry.label, Object.freeze([...entry.values]));
  }
  return Object.freeze({
    cellCount: table.cells.length,
    coordinates: model.coordinates.map(pad3),
    cells: table.cells,
    atoms: table.atoms,
    byDim,
    labels: results.results.map((r) => r.label),
    results: valueMap,
  });
}
