/** Strict parser for the study result CSV produced by the rankenv CLI. */

export const STUDY_COLUMNS = [
  "measure",
  "s",
  "d",
  "scale",
  "outlier",
  "alpha",
  "reps",
  "detections",
  "power",
  "ci_lo",
  "ci_hi",
  "master_seed",
] as const

export interface StudyRow {
  measure: string
  s: number
  d: number
  scale: number
  outlier: string
  alpha: number
  reps: number
  detections: number
  power: number
  ciLo: number
  ciHi: number
  masterSeed: number
  /** Verbatim CSV text of the power field, kept so plots never reformat it. */
  powerRaw: string
  ciLoRaw: string
  ciHiRaw: string
}

export class StudyCsvError extends Error {}

function parseNumber(field: string, column: string, line: number): number {
  const value = Number(field)
  if (field.trim() === "" || !Number.isFinite(value)) {
    throw new StudyCsvError(
      `line ${line}: column ${column} is not a finite number: ${JSON.stringify(field)}`,
    )
  }
  return value
}

export function parseStudyCsv(text: string): StudyRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0)
  if (lines.length === 0) {
    throw new StudyCsvError("empty CSV")
  }
  const header = lines[0].split(",")
  const missing = STUDY_COLUMNS.filter((column) => !header.includes(column))
  if (missing.length > 0) {
    throw new StudyCsvError(`missing columns: ${missing.join(", ")}`)
  }
  if (header.length !== STUDY_COLUMNS.length) {
    throw new StudyCsvError(`expected ${STUDY_COLUMNS.length} columns, got ${header.length}`)
  }
  const index = new Map(STUDY_COLUMNS.map((column) => [column, header.indexOf(column)]))
  const rows: StudyRow[] = []
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",")
    if (fields.length !== header.length) {
      throw new StudyCsvError(`line ${i + 1}: expected ${header.length} fields, got ${fields.length}`)
    }
    const at = (column: (typeof STUDY_COLUMNS)[number]) => fields[index.get(column)!]
    rows.push({
      measure: at("measure"),
      s: parseNumber(at("s"), "s", i + 1),
      d: parseNumber(at("d"), "d", i + 1),
      scale: parseNumber(at("scale"), "scale", i + 1),
      outlier: at("outlier"),
      alpha: parseNumber(at("alpha"), "alpha", i + 1),
      reps: parseNumber(at("reps"), "reps", i + 1),
      detections: parseNumber(at("detections"), "detections", i + 1),
      power: parseNumber(at("power"), "power", i + 1),
      ciLo: parseNumber(at("ci_lo"), "ci_lo", i + 1),
      ciHi: parseNumber(at("ci_hi"), "ci_hi", i + 1),
      masterSeed: parseNumber(at("master_seed"), "master_seed", i + 1),
      powerRaw: at("power"),
      ciLoRaw: at("ci_lo"),
      ciHiRaw: at("ci_hi"),
    })
  }
  return rows
}
