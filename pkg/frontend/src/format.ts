/**
 * Parsing and validation of model and results files.
 *
 * Mirrors the checker's JSON wire formats byte for byte: a results file is
 * only accepted together with the exact model file it was computed from
 * (SHA-256 over the model file bytes).
 */

export class SchemaError extends Error {}
export class HashMismatchError extends Error {}
export class UnknownLabelError extends Error {}

export interface ModelFile {
  readonly coordinates: readonly (readonly number[])[];
  readonly atomNames: readonly string[];
  readonly simplexes: readonly { points: readonly number[]; atoms: readonly (number | string)[] }[];
}

export interface ResultsFile {
  readonly modelHash: string;
  readonly cellCount: number;
  readonly results: readonly { label: string; values: readonly boolean[] }[];
}

function parseJson(data: Uint8Array | string, what: string): unknown {
  const text = typeof data === "string" ? data : new TextDecoder().decode(data);
  try {
    return JSON.parse(text);
  } catch (err) {
    throw new SchemaError(`${what}: not valid JSON (${String(err)})`);
  }
}

function asObject(value: unknown, what: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new SchemaError(`${what}: expected an object`);
  }
  return value as Record<string, unknown>;
}

export function parseModelFile(data: Uint8Array | string): ModelFile {
  const doc = asObject(parseJson(data, "model"), "model");
  const coordinates = doc.coordinates;
  const atomNames = doc.atomNames;
  const simplexes = doc.simplexes;
  if (!Array.isArray(coordinates) || coordinates.length === 0) {
    throw new SchemaError("model: missing or empty coordinates");
  }
  const width = Array.isArray(coordinates[0]) ? coordinates[0].length : -1;
  for (const row of coordinates) {
    if (!Array.isArray(row) || row.length !== width || row.some((x) => typeof x !== "number")) {
      throw new SchemaError("model: coordinates must be equal-length number lists");
    }
  }
  if (!Array.isArray(atomNames) || atomNames.some((a) => typeof a !== "string")) {
    throw new SchemaError("model: atomNames must be strings");
  }
  if (!Array.isArray(simplexes)) {
    throw new SchemaError("model: missing simplexes");
  }
  const parsed = simplexes.map((entry, i) => {
    const obj = asObject(entry, `simplexes[${i}]`);
    const points = obj.points;
    if (!Array.isArray(points) || points.length === 0) {
      throw new SchemaError(`simplexes[${i}]: points must be a nonempty list`);
    }
    for (const p of points) {
      if (!Number.isInteger(p) || (p as number) < 0 || (p as number) >= coordinates.length) {
        throw new SchemaError(`simplexes[${i}]: vertex ${String(p)} out of range`);
      }
    }
    const atoms = obj.atoms ?? [];
    if (!Array.isArray(atoms)) {
      throw new SchemaError(`simplexes[${i}]: atoms must be a list`);
    }
    for (const a of atoms) {
      const ok =
        (typeof a === "number" && Number.isInteger(a) && a >= 0 && a < atomNames.length) ||
        (typeof a === "string" && atomNames.includes(a));
      if (!ok) throw new SchemaError(`simplexes[${i}]: bad atom reference ${String(a)}`);
    }
    return { points: points as number[], atoms: atoms as (number | string)[] };
  });
  return { coordinates, atomNames, simplexes: parsed };
}

export function parseResultsFile(data: Uint8Array | string): ResultsFile {
  const doc = asObject(parseJson(data, "results"), "results");
  const modelHash = doc.modelHash;
  const cellCount = doc.cellCount;
  const results = doc.results;
  if (typeof modelHash !== "string") throw new SchemaError("results: missing modelHash");
  if (!Number.isInteger(cellCount)) throw new SchemaError("results: missing cellCount");
  if (!Array.isArray(results)) throw new SchemaError("results: missing results list");
  const labels = new Set<string>();
  const parsed = results.map((entry, i) => {
    const obj = asObject(entry, `results[${i}]`);
    const label = obj.label;
    const values = obj.values;
    if (typeof label !== "string") throw new SchemaError(`results[${i}]: missing label`);
    if (labels.has(label)) throw new SchemaError(`results: duplicate label ${label}`);
    labels.add(label);
    if (!Array.isArray(values) || values.length !== cellCount) {
      throw new SchemaError(
        `results[${i}]: expected ${String(cellCount)} values, got ${
          Array.isArray(values) ? values.length : "none"
        }`,
      );
    }
    if (values.some((v) => typeof v !== "boolean")) {
      throw new SchemaError(`results[${i}]: values must be booleans`);
    }
    return { label, values: values as boolean[] };
  });
  return { modelHash, cellCount: cellCount as number, results: parsed };
}

export async function sha256Hex(data: Uint8Array): Promise<string> {
  const buffer = data.buffer.slice(data.byteOffset, data.byteOffset + data.byteLength);
  const digest = await crypto.subtle.digest("SHA-256", buffer as ArrayBuffer);
  return Array.from(new Uint8Array(digest))
    .map((b) => b.toString(16).padStart(2, "0"))
    .join("");
}
