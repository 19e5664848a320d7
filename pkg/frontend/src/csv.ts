/**
 * Reader for the sweep CSV files written by the relaydmt CLI.
 *
 * The format is fixed: zero or more `# ` comment lines carrying run
 * metadata, one header row that must read exactly
 * `series,eta_db,value,ci_low,ci_high`, then data rows with LF line
 * endings and nothing else. Anything off-schema is an error here;
 * this module never guesses and never drops fields.
 */

export const CSV_HEADER = "series,eta_db,value,ci_low,ci_high";

const COLUMNS = CSV_HEADER.split(",");

export class CsvSchemaError extends Error {}

export interface CsvPoint {
  etaDb: number;
  value: number;
  ciLow: number;
  ciHigh: number;
}

/** One curve: every data row sharing a series name, in file order. */
export interface CsvSeries {
  name: string;
  points: CsvPoint[];
}

export interface SweepCsv {
  /** Comment lines with the leading `# ` stripped. */
  meta: string[];
  /** Series in first-seen row order. */
  series: CsvSeries[];
}

function fail(name: string, lineno: number, msg: string): never {
  throw new CsvSchemaError(`${name}:${lineno}: ${msg}`);
}

function checkHeader(name: string, lineno: number, line: string): void {
  if (line === CSV_HEADER) return;
  const got = line.split(",");
  for (let i = 0; i < COLUMNS.length; i++) {
    if (got[i] !== COLUMNS[i]) {
      fail(
        name,
        lineno,
        `header column ${i + 1} is '${got[i] ?? ""}', expected '${COLUMNS[i]}'`,
      );
    }
  }
  fail(name, lineno, `header has ${got.length} columns, expected ${COLUMNS.length}`);
}

function parseNumber(name: string, lineno: number, column: string, field: string): number {
  // Number("") is 0 and Number("  1") is 1; both would hide damage, so
  // insist on a non-empty exact token before converting.
  if (field === "" || field !== field.trim()) {
    fail(name, lineno, `column '${column}' has malformed value '${field}'`);
  }
  const v = Number(field);
  if (Number.isNaN(v)) {
    fail(name, lineno, `column '${column}' has non-numeric value '${field}'`);
  }
  return v;
}

/** Parse one CSV file's text. `name` only labels error messages. */
export function parseSweepCsv(text: string, name = "<csv>"): SweepCsv {
  const meta: string[] = [];
  const series: CsvSeries[] = [];
  const byName = new Map<string, CsvSeries>();
  let headerSeen = false;
  let rows = 0;

  const lines = text.split("\n");
  // A well-formed file ends with a newline, leaving one empty trailer.
  if (lines[lines.length - 1] === "") lines.pop();

  for (let i = 0; i < lines.length; i++) {
    const lineno = i + 1;
    const line = lines[i]!;
    if (line.endsWith("\r")) {
      fail(name, lineno, "CRLF line ending; the schema is LF only");
    }
    if (line.startsWith("#")) {
      if (headerSeen) fail(name, lineno, "comment after data");
      meta.push(line.startsWith("# ") ? line.slice(2) : line.slice(1));
      continue;
    }
    if (!headerSeen) {
      checkHeader(name, lineno, line);
      headerSeen = true;
      continue;
    }
    const fields = line.split(",");
    if (fields.length !== COLUMNS.length) {
      fail(name, lineno, `expected ${COLUMNS.length} fields, got ${fields.length}`);
    }
    const seriesName = fields[0]!;
    if (seriesName === "") fail(name, lineno, "empty series name");
    const point: CsvPoint = {
      etaDb: parseNumber(name, lineno, "eta_db", fields[1]!),
      value: parseNumber(name, lineno, "value", fields[2]!),
      ciLow: parseNumber(name, lineno, "ci_low", fields[3]!),
      ciHigh: parseNumber(name, lineno, "ci_high", fields[4]!),
    };
    let s = byName.get(seriesName);
    if (s === undefined) {
      s = { name: seriesName, points: [] };
      byName.set(seriesName, s);
      series.push(s);
    }
    s.points.push(point);
    rows++;
  }

  if (!headerSeen) throw new CsvSchemaError(`${name}: missing header row`);
  if (rows === 0) throw new CsvSchemaError(`${name}: no data rows`);
  return { meta, series };
}

/**
 * Series names announced in the metadata block (`series NAME: ...`
 * lines). A name declared here but absent from the data rows means the
 * producer wrote an empty series, which render treats as an error.
 */
export function declaredSeries(csv: SweepCsv): string[] {
  const names: string[] = [];
  for (const line of csv.meta) {
    const m = /^series (\S+):/.exec(line);
    if (m !== null) names.push(m[1]!);
  }
  return names;
}
