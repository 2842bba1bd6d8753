/** Command-line entry point: render one figure for one outlier kind.
 *
 * Usage: rankenv-figures --input study.csv --outlier integral --output fig.svg
 */

import { readFileSync, writeFileSync } from "fs"
import { pathToFileURL } from "url"

import { parseStudyCsv, StudyCsvError } from "./csv.js"
import { EmptySelectionError, renderFigure } from "./figure.js"

const USAGE = "usage: rankenv-figures --input <study.csv> --outlier <kind> --output <figure.svg>"

function parseArgs(argv: string[]): { input: string; outlier: string; output: string } | null {
  const values: Record<string, string> = {}
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i]
    const value = argv[i + 1]
    if (!["--input", "--outlier", "--output"].includes(flag) || value === undefined) {
      return null
    }
    values[flag.slice(2)] = value
  }
  if (!values.input || !values.outlier || !values.output) {
    return null
  }
  return { input: values.input, outlier: values.outlier, output: values.output }
}

export function main(argv: string[]): number {
  const args = parseArgs(argv)
  if (args === null) {
    process.stderr.write(USAGE + "\n")
    return 1
  }
  try {
    const rows = parseStudyCsv(readFileSync(args.input, "utf8"))
    writeFileSync(args.output, renderFigure(rows, args.outlier))
  } catch (err) {
    if (
      err instanceof StudyCsvError ||
      err instanceof EmptySelectionError ||
      (err as NodeJS.ErrnoException).code !== undefined
    ) {
      process.stderr.write(`error: ${(err as Error).message}\n`)
      return 1
    }
    throw err
  }
  return 0
}

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)))
}
