/** Deterministic FE-name coloring: the same frame element gets the same
 * color in every session and on every machine, with no stored palette. */

export const PALETTE_SIZE = 10;

/** FNV-1a over UTF-16 code units; stable across runtimes. */
export function feColorIndex(name: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < name.length; i++) {
    hash ^= name.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash % PALETTE_SIZE;
}

export function feColorClass(name: string): string {
  return `fe-color-${feColorIndex(name)}`;
}
