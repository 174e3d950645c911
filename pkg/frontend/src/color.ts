/**
 * Shared color scales.
 *
 * Basis-state probability uses a light-to-dark green ramp that is white at
 * exactly zero, so impossible basis states visibly disappear.  Class A is
 * blue, class B red; the light variants fill donut sections.
 */

export const WHITE = '#ffffff';

const LIGHT_GREEN: [number, number, number] = [221, 240, 219];
const DARK_GREEN: [number, number, number] = [9, 77, 35];

export const CLASS_A_COLOR = '#3b6fd4';
export const CLASS_B_COLOR = '#d44a3b';
export const CLASS_A_LIGHT = '#b9cff2';
export const CLASS_B_LIGHT = '#f2bdb6';
export const CLASS_A_FAINT = '#e3ecfa';
export const CLASS_B_FAINT = '#fae4e1';

export function probabilityColor(p: number): string {
  if (p === 0) return WHITE;
  const t = Math.max(0, Math.min(1, p));
  const channel = (i: number) => Math.round(LIGHT_GREEN[i] + t * (DARK_GREEN[i] - LIGHT_GREEN[i]));
  return rgbToHex(channel(0), channel(1), channel(2));
}

export function classColor(label: string, variant: 'strong' | 'light' | 'faint' = 'strong'): string {
  const a = label === 'A';
  if (variant === 'strong') return a ? CLASS_A_COLOR : CLASS_B_COLOR;
  if (variant === 'light') return a ? CLASS_A_LIGHT : CLASS_B_LIGHT;
  return a ? CLASS_A_FAINT : CLASS_B_FAINT;
}

function rgbToHex(r: number, g: number, b: number): string {
  const hex = (v: number) => v.toString(16).padStart(2, '0');
  return `#${hex(r)}${hex(g)}${hex(b)}`;
}
