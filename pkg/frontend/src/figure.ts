/** Render power-curve panel figures as standalone SVG strings.
 *
 * Layout: one panel per (d, scale) cell, rows ordered by d ascending and
 * columns by scale ascending; within a panel one line per measure with the
 * power on the y-axis (fixed [0, 1] range) against log2(s) on the x-axis,
 * plus a shaded confidence band taken verbatim from the CSV columns.
 */

import type { StudyRow } from "./csv.js"

export class EmptySelectionError extends Error {}

export const MEASURE_ORDER = ["rank", "erl", "cont", "area", "qdir"] as const

const MEASURE_COLORS: Record<string, string> = {
  rank: "#4477aa",
  erl: "#ee6677",
  cont: "#228833",
  area: "#ccbb44",
  qdir: "#aa3377",
}

export interface PanelSpec {
  outlier: string
  dValues: number[]
  scaleValues: number[]
}

export function buildPanelSpec(rows: StudyRow[], outlier: string): PanelSpec {
  const selected = rows.filter((row) => row.outlier === outlier)
  if (selected.length === 0) {
    throw new EmptySelectionError(`no rows with outlier ${JSON.stringify(outlier)}`)
  }
  const dValues = [...new Set(selected.map((row) => row.d))].sort((a, b) => a - b)
  const scaleValues = [...new Set(selected.map((row) => row.scale))].sort((a, b) => a - b)
  return { outlier, dValues, scaleValues }
}

const MARGIN = { left: 52, top: 56, right: 16, bottom: 42 }
const PANEL = { width: 230, height: 170, hgap: 20, vgap: 34 }

const fmt = (value: number): string => value.toFixed(2)

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
}

function glyph(measure: string, x: number, y: number, color: string): string {
  const r = 3
  switch (measure) {
    case "rank":
      return `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${color}"/>`
    case "erl":
      return `<rect x="${fmt(x - r)}" y="${fmt(y - r)}" width="${2 * r}" height="${2 * r}" fill="${color}"/>`
    case "cont":
      return `<path d="M ${fmt(x)} ${fmt(y - r - 1)} L ${fmt(x + r + 1)} ${fmt(y)} L ${fmt(x)} ${fmt(y + r + 1)} L ${fmt(x - r - 1)} ${fmt(y)} Z" fill="${color}"/>`
    case "area":
      return `<path d="M ${fmt(x)} ${fmt(y - r - 1)} L ${fmt(x + r)} ${fmt(y + r)} L ${fmt(x - r)} ${fmt(y + r)} Z" fill="${color}"/>`
    default:
      return `<path d="M ${fmt(x)} ${fmt(y + r + 1)} L ${fmt(x + r)} ${fmt(y - r)} L ${fmt(x - r)} ${fmt(y - r)} Z" fill="${color}"/>`
  }
}

export function renderFigure(rows: StudyRow[], outlier: string): string {
  const spec = buildPanelSpec(rows, outlier)
  const selected = rows.filter((row) => row.outlier === outlier)
  const sValues = [...new Set(selected.map((row) => row.s))].sort((a, b) => a - b)

  let xLo = Math.log2(sValues[0])
  let xHi = Math.log2(sValues[sValues.length - 1])
  if (xLo === xHi) {
    xLo -= 0.5
    xHi += 0.5
  }
  const xPos = (s: number): number => ((Math.log2(s) - xLo) / (xHi - xLo)) * PANEL.width
  const yPos = (power: number): number => (1 - power) * PANEL.height

  const nRows = spec.dValues.length
  const nCols = spec.scaleValues.length
  const width = MARGIN.left + nCols * PANEL.width + (nCols - 1) * PANEL.hgap + MARGIN.right
  const height = MARGIN.top + nRows * PANEL.height + (nRows - 1) * PANEL.vgap + MARGIN.bottom

  const parts: string[] = []
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="11">`,
  )
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`)
  parts.push(
    `<text x="${fmt(width / 2)}" y="16" text-anchor="middle" font-size="13">power against number of curves, outlier = ${escapeXml(outlier)}</text>`,
  )

  // legend: the five measures in their fixed drawing order
  let legendX = MARGIN.left
  for (const measure of MEASURE_ORDER) {
    const color = MEASURE_COLORS[measure]
    parts.push(`<line x1="${legendX}" y1="34" x2="${legendX + 22}" y2="34" stroke="${color}" stroke-width="1.5"/>`)
    parts.push(glyph(measure, legendX + 11, 34, color))
    parts.push(`<text x="${legendX + 27}" y="38">${measure}</text>`)
    legendX += 82
  }

  for (let rowIdx = 0; rowIdx < nRows; rowIdx++) {
    for (let colIdx = 0; colIdx < nCols; colIdx++) {
      const d = spec.dValues[rowIdx]
      const scale = spec.scaleValues[colIdx]
      const originX = MARGIN.left + colIdx * (PANEL.width + PANEL.hgap)
      const originY = MARGIN.top + rowIdx * (PANEL.height + PANEL.vgap)
      parts.push(
        `<g class="panel" data-d="${d}" data-scale="${scale}" transform="translate(${originX},${originY})">`,
      )
      parts.push(
        `<text x="${fmt(PANEL.width / 2)}" y="-8" text-anchor="middle">d = ${d}, scale = ${scale}</text>`,
      )
      for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
        const y = yPos(tick)
        parts.push(
          `<line x1="0" y1="${fmt(y)}" x2="${PANEL.width}" y2="${fmt(y)}" stroke="#ddd" stroke-width="0.5"/>`,
        )
        if (colIdx === 0 && tick % 0.5 === 0) {
          parts.push(`<text x="-8" y="${fmt(y + 3.5)}" text-anchor="end">${tick}</text>`)
        }
      }
      for (const s of sValues) {
        const x = xPos(s)
        parts.push(
          `<line x1="${fmt(x)}" y1="0" x2="${fmt(x)}" y2="${PANEL.height}" stroke="#eee" stroke-width="0.5"/>`,
        )
        if (rowIdx === nRows - 1) {
          parts.push(
            `<text x="${fmt(x)}" y="${PANEL.height + 16}" text-anchor="middle">${s}</text>`,
          )
        }
      }
      parts.push(`<rect width="${PANEL.width}" height="${PANEL.height}" fill="none" stroke="#333"/>`)

      for (const measure of MEASURE_ORDER) {
        const series = selected
          .filter((row) => row.measure === measure && row.d === d && row.scale === scale)
          .sort((a, b) => a.s - b.s)
        if (series.length === 0) continue
        const color = MEASURE_COLORS[measure]
        const upper = series.map((row) => `${fmt(xPos(row.s))},${fmt(yPos(row.ciHi))}`)
        const lower = series.map((row) => `${fmt(xPos(row.s))},${fmt(yPos(row.ciLo))}`).reverse()
        parts.push(
          `<polygon class="band" data-measure="${measure}" points="${[...upper, ...lower].join(" ")}" fill="${color}" fill-opacity="0.15" stroke="none"/>`,
        )
        const points = series.map((row) => `${fmt(xPos(row.s))},${fmt(yPos(row.power))}`)
        const powers = series.map((row) => row.powerRaw)
        const sizes = series.map((row) => String(row.s))
        parts.push(
          `<polyline class="series" data-measure="${measure}" data-d="${d}" data-scale="${scale}" ` +
            `data-s="${sizes.join(" ")}" data-power="${powers.join(" ")}" ` +
            `points="${points.join(" ")}" fill="none" stroke="${color}" stroke-width="1.5"/>`,
        )
        for (const row of series) {
          parts.push(glyph(measure, xPos(row.s), yPos(row.power), color))
        }
      }
      parts.push(`</g>`)
    }
  }
  parts.push(`<text x="${fmt(width / 2)}" y="${height - 10}" text-anchor="middle">s (log2 axis)</text>`)
  parts.push(`</svg>`)
  return parts.join("\n") + "\n"
}
