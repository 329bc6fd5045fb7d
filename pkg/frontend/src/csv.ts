/**
 * Minimal CSV reader for the sweep outputs (plain comma-separated values,
 * no quoting or embedded commas are ever emitted by the producer).
 */

export interface Table {
  columns: string[];
  rows: string[][];
}

export class CsvError extends Error {}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvError("empty CSV: no header row");
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  for (const row of rows) {
    if (row.length !== columns.length) {
      throw new CsvError(
        `ragged CSV row: expected ${columns.length} fields, got ${row.length}`,
      );
    }
  }
  if (rows.length === 0) {
    throw new CsvError("empty CSV: header but no data rows");
  }
  return { columns, rows };
}

export function columnIndex(table: Table, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvError(
      `missing column '${name}' (have: ${table.columns.join(", ")})`,
    );
  }
  return idx;
}

export function numericColumn(table: Table, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.rows.map((row) => {
    const value = Number(row[idx]);
    if (!Number.isFinite(value)) {
      throw new CsvError(`non-numeric value '${row[idx]}' in column '${name}'`);
    }
    return value;
  });
}
