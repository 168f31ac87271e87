/** MCDM weight-slider helpers.
 *
 * Sliders always submit (and display) the sum-normalized vector; raw
 * slider positions never leave the client unnormalized.
 */

export function normalizeWeights(raw: number[]): number[] {
  const clipped = raw.map((v) => (Number.isFinite(v) && v > 0 ? v : 0));
  const total = clipped.reduce((a, b) => a + b, 0);
  if (total <= 0) {
    return raw.map(() => 1 / raw.length);
  }
  return clipped.map((v) => v / total);
}

export function uniformWeights(m: number): number[] {
  return Array.from({ length: m }, () => 1 / m);
}

export function formatWeight(value: number): string {
  return value.toFixed(3);
}
