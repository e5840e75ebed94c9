/** Stable cluster colors: cluster index i always renders the same color,
 * so re-renders of the same plan document are deterministic. */

const PALETTE = [
  '#e6194b',
  '#3cb44b',
  '#4363d8',
  '#f58231',
  '#911eb4',
  '#4699c9',
  '#f032e6',
  '#9a6324',
  '#808000',
  '#008080',
  '#e6beff',
  '#800000',
];

export function clusterColor(clusterIndex: number): string {
  if (clusterIndex < 0 || !Number.isInteger(clusterIndex)) {
    throw new Error(`invalid cluster index ${clusterIndex}`);
  }
  return PALETTE[clusterIndex % PALETTE.length];
}

export const NEUTRAL_POINT = '#9aa0a6';
export const WAREHOUSE_STROKE = '#111111';
