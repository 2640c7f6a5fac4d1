/**
 * Pure view logic: a selected label plus display settings turn the scene
 * into render groups (one per dimension and truth value), with tetrahedra
 * shrunk toward their barycentre.  No three.js types here so everything is
 * unit-testable; the render layer consumes the output verbatim.
 */

import { UnknownLabelError } from "./format.js";
import { SceneModel } from "./scene.js";

export type ColorMode = "opacity" | "classify";

export interface ViewState {
  label: string;
  mode: ColorMode;
  /** Opacity of cells satisfying the property, in [0, 1]. */
  satOpacity: number;
  /** Opacity of the remaining cells, in [0, 1]. */
  unsatOpacity: number;
  /** Tetrahedron scale toward the barycentre, in (0, 1]. */
  shrink: number;
}

export const DEFAULT_VIEW: Omit<ViewState, "label"> = {
  mode: "opacity",
  satOpacity: 1.0,
  unsatOpacity: 0.15,
  shrink: 0.85,
};

export type Rgb = readonly [number, number, number];

export interface RenderGroup {
  dim: 0 | 1 | 2 | 3;
  satisfied: boolean;
  opacity: number;
  cellIds: number[];
  /** Per cell: its vertex positions (1, 2, 3 or 4 points; tets pre-shrunk). */
  positions: [number, number, number][][];
  /** Per cell color. */
  colors: Rgb[];
}

export const SAT_COLOR: Rgb = [0.15, 0.75, 0.3];
export const UNSAT_COLOR: Rgb = [0.8, 0.18, 0.18];
const DIM_FALLBACK: readonly Rgb[] = [
  [0.85, 0.85, 0.9],
  [0.7, 0.72, 0.8],
  [0.55, 0.6, 0.75],
  [0.45, 0.5, 0.68],
];

/** Color encoded by quantized channel atoms like r2/g0/b3, if present. */
export function atomColor(atoms: readonly string[], dim: number): Rgb {
  const channels: Record<string, number> = {};
  let levels = 4;
  for (const atom of atoms) {
    const match = /^([rgb])(\d+)$/.exec(atom);
    if (match) {
      const level = Number(match[2]);
      channels[match[1]] = level;
      levels = Math.max(levels, level + 1);
    }
  }
  if ("r" in channels || "g" in channels || "b" in channels) {
    const value = (c: string) => ((channels[c] ?? 0) + 0.5) / levels;
    return [value("r"), value("g"), value("b")];
  }
  return DIM_FALLBACK[dim];
}

function validate(view: ViewState): void {
  const inUnit = (x: number) => x >= 0 && x <= 1;
  if (!inUnit(view.satOpacity) || !inUnit(view.unsatOpacity)) {
    throw new RangeError("opacities must be within [0, 1]");
  }
  if (!(view.shrink > 0 && view.shrink <= 1)) {
    throw new RangeError("shrink must be within (0, 1]");
  }
}

export function barycentre(points: readonly (readonly [number, number, number])[]): [number, number, number] {
  const sum: [number, number, number] = [0, 0, 0];
  for (const p of points) {
    sum[0] += p[0];
    sum[1] += p[1];
    sum[2] += p[2];
  }
  return [sum[0] / points.length, sum[1] / points.length, sum[2] / points.length];
}

function shrinkToward(
  points: readonly (readonly [number, number, number])[],
  factor: number,
): [number, number, number][] {
  if (factor === 1) return points.map((p) => [p[0], p[1], p[2]]);
  const b = barycentre(points);
  return points.map((p) => [
    b[0] + factor * (p[0] - b[0]),
    b[1] + factor * (p[1] - b[1]),
    b[2] + factor * (p[2] - b[2]),
  ]);
}

/**
 * Partition the scene's cells into render groups for the selected label.
 *
 * Does not mutate the scene; calling it twice with equal inputs yields
 * structurally equal outputs.
 */
export function applySelection(scene: SceneModel, view: ViewState): RenderGroup[] {
  validate(view);
  const values = scene.results.get(view.label);
  if (!values) {
    throw new UnknownLabelError(`no saved property named ${JSON.stringify(view.label)}`);
  }
  const groups: RenderGroup[] = [];
  for (const dim of [0, 1, 2, 3] as const) {
    for (const satisfied of [true, false]) {
      const ids = scene.byDim[dim].filter((id) => values[id] === satisfied);
      if (ids.length === 0) continue;
      const group: RenderGroup = {
        dim,
        satisfied,
        opacity: satisfied ? view.satOpacity : view.unsatOpacity,
        cellIds: ids,
        positions: [],
        colors: [],
      };
      for (const id of ids) {
        const corners = scene.cells[id].map((v) => scene.coordinates[v]);
        group.positions.push(
          dim === 3 ? shrinkToward(corners, view.shrink) : shrinkToward(corners, 1),
        );
        group.colors.push(
          view.mode === "classify"
            ? satisfied
              ? SAT_COLOR
              : UNSAT_COLOR
            : atomColor(scene.atoms[id], dim),
        );
      }
      groups.push(group);
    }
  }
  return groups;
}

/** Triangles of a cell's surface, as corner index triples. */
export function surfaceTriangles(dim: number): readonly (readonly [number, number, number])[] {
  if (dim === 2) return [[0, 1, 2]];
  if (dim === 3) {
    return [
      [0, 1, 2],
      [0, 1, 3],
      [0, 2, 3],
      [1, 2, 3],
    ];
  }
  return [];
}

export interface TriangleSoup {
  /** xyz per vertex, three vertices per triangle. */
  positions: Float32Array;
  /** rgb per vertex. */
  colors: Float32Array;
  /** Cell id per triangle, for picking. */
  triangleCells: Int32Array;
}

/** Flatten the triangles of a dim-2 or dim-3 group into one soup. */
export function triangleSoup(group: RenderGroup): TriangleSoup {
  const faces = surfaceTriangles(group.dim);
  const nTriangles = group.cellIds.length * faces.length;
  const positions = new Float32Array(nTriangles * 9);
  const colors = new Float32Array(nTriangles * 9);
  const triangleCells = new Int32Array(nTriangles);
  let t = 0;
  group.cellIds.forEach((cellId, i) => {
    const pts = group.positions[i];
    const [r, g, b] = group.colors[i];
    for (const [a, bIdx, c] of faces) {
      triangleCells[t] = cellId;
      const base = t * 9;
      const corners = [pts[a], pts[bIdx], pts[c]];
      corners.forEach((p, k) => {
        positions[base + k * 3] = p[0];
        positions[base + k * 3 + 1] = p[1];
        positions[base + k * 3 + 2] = p[2];
        colors[base + k * 3] = r;
        colors[base + k * 3 + 1] = g;
        colors[base + k * 3 + 2] = b;
      });
      t += 1;
    }
  });
  return { positions, colors, triangleCells };
}
