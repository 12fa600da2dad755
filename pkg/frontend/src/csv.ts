/**
 * Reader for the simulation CLI's CSV contract:
 *
 *   # key: value            (header comments, including config_digest)
 *   col1,col2,...           (column names)
 *   1.23,4.56,...           (numeric rows, 17 significant digits)
 */

import { readFileSync } from "node:fs";

export interface CsvTable {
  /** `#`-comment metadata (command, version, config_digest, ...). */
  header: Record<string, string>;
  columns: string[];
  /** Row-major numeric data, rows[i][j] belongs to columns[j]. */
  rows: number[][];
}

export class SchemaError extends Error {}

export function parseCsv(text: string, source = "<string>"): CsvTable {
  const header: Record<string, string> = {};
  let columns: string[] | null = null;
  const rows: number[][] = [];

  for (const rawLine of text.split(/\r?\n/)) {
    const line = rawLine.trim();
    if (line === "") continue;
    if (line.startsWith("#")) {
      const body = line.slice(1);
      const sep = body.indexOf(":");
      if (sep >= 0) {
        header[body.slice(0, sep).trim()] = body.slice(sep + 1).trim();
      }
      continue;
    }
    if (columns === null) {
      columns = line.split(",").map((c) => c.trim());
      continue;
    }
    const values = line.split(",").map(Number);
    if (values.length !== columns.length) {
      throw new SchemaError(
        `${source}: row has ${values.length} fields, expected ${columns.length}`,
      );
    }
    if (values.some((v) => Number.isNaN(v))) {
      throw new SchemaError(`${source}: non-numeric value in data row`);
    }
    rows.push(values);
  }

  if (columns === null || rows.length === 0) {
    throw new SchemaError(`${source}: empty CSV (no columns or no data rows)`);
  }
  return { header, columns, rows };
}

export function readCsv(path: string): CsvTable {
  return parseCsv(readFileSync(path, "utf8"), path);
}

/** Extract one column by name; schema violations are loud. */
export function column(table: CsvTable, name: string): number[] {
  const index = table.columns.indexOf(name);
  if (index < 0) {
    throw new SchemaError(
      `missing column "${name}"; found [${table.columns.join(", ")}]`,
    );
  }
  return table.rows.map((row) => row[index]);
}
