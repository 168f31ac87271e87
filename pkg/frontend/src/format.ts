/** Display formatting for API numbers. Null (non-finite upstream) renders
 * as a dash placeholder so missing cells stay visually distinct. */

export const MISSING = "—";

export function formatNumber(value: number | null | undefined, digits = 4): string {
  if (value === null || value === undefined || !Number.isFinite(value)) {
    return MISSING;
  }
  return value.toPrecision(digits);
}

export function formatCell(mean: number | null, std: number | null): string {
  if (mean === null || !Number.isFinite(mean)) return MISSING;
  const s = std === null || !Number.isFinite(std) ? "0" : formatNumber(std);
  return `${formatNumber(mean)}±${s}`;
}

export function formatP(p: number): string {
  return p < 1e-4 ? p.toExponential(2) : p.toFixed(4);
}
