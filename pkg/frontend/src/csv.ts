/**
 * Strict reader for the simulator's CSV contract.
 *
 * Files carry `#`-prefixed comment lines (config echo), one exact header
 * row, and numeric rows where unfilled columns are empty strings.
 */

import { readFileSync } from "fs";

export const CSV_COLUMNS = [
  "snr_db",
  "ber_bob",
  "ber_bob_se",
  "ber_eve",
  "ber_eve_se",
  "ber_bound",
  "r_b",
  "r_e",
  "r_s",
  "r_s_se",
  "blocks",
  "bit_errors_bob",
] as const;

export type CsvColumn = (typeof CSV_COLUMNS)[number];

/** One SNR point; absent columns are null. */
export type CurveRow = Record<CsvColumn, number | null>;

export interface CurveFile {
  path: string;
  comments: string[];
  rows: CurveRow[];
}

export class SchemaError extends Error {}

function parseCell(column: CsvColumn, text: string, line: number): number | null {
  if (text === "") return null;
  const value = Number(text);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`line ${line}: column '${column}' is not numeric: '${text}'`);
  }
  return value;
}

export function parseCurveText(text: string, path = "<memory>"): CurveFile {
  const comments: string[] = [];
  const rows: CurveRow[] = [];
  let headerSeen = false;
  const lines = text.split(/\r?\n/);
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i];
    if (line.trim() === "") continue;
    if (line.startsWith("#")) {
      comments.push(line.replace(/^#\s?/, ""));
      continue;
    }
    if (!headerSeen) {
      const header = line.split(",");
      for (let c = 0; c < CSV_COLUMNS.length; c++) {
        if (header[c] !== CSV_COLUMNS[c]) {
          throw new SchemaError(
            `${path}: header mismatch at column ${c}: expected '${CSV_COLUMNS[c]}', got '${header[c] ?? "<missing>"}'`,
          );
        }
      }
      if (header.length !== CSV_COLUMNS.length) {
        throw new SchemaError(
          `${path}: header has ${header.length} columns, expected ${CSV_COLUMNS.length}`,
        );
      }
      headerSeen = true;
      continue;
    }
    const cells = line.split(",");
    if (cells.length !== CSV_COLUMNS.length) {
      throw new SchemaError(
        `${path}: line ${i + 1} has ${cells.length} fields, expected ${CSV_COLUMNS.length}`,
      );
    }
    const row = {} as CurveRow;
    CSV_COLUMNS.forEach((col, c) => {
      row[col] = parseCell(col, cells[c], i + 1);
    });
    if (row.snr_db === null) {
      throw new SchemaError(`${path}: line ${i + 1}: column 'snr_db' must be present`);
    }
    rows.push(row);
  }
  if (!headerSeen) throw new SchemaError(`${path}: no header row found`);
  return { path, comments, rows };
}

export function readCurveFile(path: string): CurveFile {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new SchemaError(`cannot read CSV file '${path}': ${(err as Error).message}`);
  }
  return parseCurveText(text, path);
}
