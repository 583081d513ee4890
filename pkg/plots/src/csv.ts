/**
 * Strict reader for the bounds-sweep CSV schema.
 *
 * The producer always writes the full header row, uses the literal "NA" for
 * absent measured-ratio cells, and never quotes fields, so parsing is a
 * straight split.  Any header deviation is a schema mismatch and an error.
 */

export const SWEEP_HEADER = [
  "n",
  "c",
  "k",
  "log2_classic",
  "log2_epsilon",
  "log2_improved",
  "log2_improved_sandwich",
  "log2_ratio_gain",
  "log2_true_ratio",
] as const;

export interface SweepRow {
  n: number;
  c: number;
  k: number;
  log2_classic: number;
  log2_epsilon: number;
  log2_improved: number;
  log2_improved_sandwich: number;
  log2_ratio_gain: number;
  /** null for "NA" cells and for non-finite measurements (no plottable data) */
  log2_true_ratio: number | null;
}

export class SchemaError extends Error {}

function parseNumber(token: string, line: number, column: string): number {
  const value = Number(token);
  if (Number.isNaN(value)) {
    throw new SchemaError(`line ${line}: column ${column} is not numeric: "${token}"`);
  }
  return value;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split("\n").filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new SchemaError("empty CSV");
  }
  const header = lines[0]!.trim();
  if (header !== SWEEP_HEADER.join(",")) {
    throw new SchemaError(
      `header mismatch: expected "${SWEEP_HEADER.join(",")}", got "${header}"`,
    );
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i]!.trim().split(",");
    if (parts.length !== SWEEP_HEADER.length) {
      throw new SchemaError(`line ${i + 1}: expected ${SWEEP_HEADER.length} fields, got ${parts.length}`);
    }
    let trueRatio: number | null = null;
    const rawRatio = parts[8]!;
    if (rawRatio !== "NA") {
      const parsed = rawRatio === "-inf" ? -Infinity : parseNumber(rawRatio, i + 1, "log2_true_ratio");
      trueRatio = Number.isFinite(parsed) ? parsed : null;
    }
    rows.push({
      n: parseNumber(parts[0]!, i + 1, "n"),
      c: parseNumber(parts[1]!, i + 1, "c"),
      k: parseNumber(parts[2]!, i + 1, "k"),
      log2_classic: parseNumber(parts[3]!, i + 1, "log2_classic"),
      log2_epsilon: parseNumber(parts[4]!, i + 1, "log2_epsilon"),
      log2_improved: parseNumber(parts[5]!, i + 1, "log2_improved"),
      log2_improved_sandwich: parseNumber(parts[6]!, i + 1, "log2_improved_sandwich"),
      log2_ratio_gain: parseNumber(parts[7]!, i + 1, "log2_ratio_gain"),
      log2_true_ratio: trueRatio,
    });
  }
  return rows;
}
