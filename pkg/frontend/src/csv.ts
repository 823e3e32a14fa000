/**
 * Reader for the sweep CSV files written by the phiwalk CLI.
 *
 * The file format is: zero or more `# key=value` metadata lines, one
 * comma-separated header row, then purely numeric data rows, all joined
 * with LF. Metadata keys may themselves contain `=` (the per-mu argmax
 * annotations do), so key and value split at the last `=` on the line.
 */

export class CsvFormatError extends Error {}

export interface ParsedCsv {
  metadata: Record<string, string>;
  columns: string[];
  rows: Record<string, number>[];
}

export function parseSweepCsv(text: string): ParsedCsv {
  const metadata: Record<string, string> = {};
  let columns: string[] | null = null;
  const rows: Record<string, number>[] = [];

  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].replace(/\r$/, "");
    if (line.trim() === "") continue;

    if (line.startsWith("#")) {
      const body = line.slice(1).trim();
      const eq = body.lastIndexOf("=");
      if (eq > 0) metadata[body.slice(0, eq)] = body.slice(eq + 1);
      continue;
    }

    if (columns === null) {
      columns = line.split(",").map((c) => c.trim());
      if (columns.some((c) => c === "")) {
        throw new CsvFormatError(`line ${i + 1}: empty column name in header`);
      }
      continue;
    }

    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new CsvFormatError(
        `line ${i + 1}: expected ${columns.length} fields, got ${cells.length}`
      );
    }
    const row: Record<string, number> = {};
    for (let j = 0; j < cells.length; j++) {
      const cell = cells[j].trim();
      const value = Number(cell);
      if (cell === "" || Number.isNaN(value)) {
        throw new CsvFormatError(
          `line ${i + 1}: non-numeric value '${cells[j]}' in column '${columns[j]}'`
        );
      }
      row[columns[j]] = value;
    }
    rows.push(row);
  }

  if (columns === null) throw new CsvFormatError("no header row found");
  if (rows.length === 0) throw new CsvFormatError("no data rows found");
  return { metadata, columns, rows };
}
