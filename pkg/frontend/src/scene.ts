/**
 * Minimal retained scene graph.
 *
 * View builders return plain data (no DOM), so tests can count and inspect
 * nodes directly; `toSvg` turns a scene into an SVG element tree.  `kind`
 * is the semantic role ("basis-circle", "heatmap-tile", ...); `data`
 * carries the payload interactions need, mirrored onto data-* attributes.
 */

export type Shape = 'group' | 'circle' | 'line' | 'rect' | 'path' | 'text' | 'polyline';

export interface SceneNode {
  kind: string;
  shape: Shape;
  attrs: Record<string, string | number>;
  data?: Record<string, string | number>;
  text?: string;
  children?: SceneNode[];
}

export interface Scene {
  width: number;
  height: number;
  nodes: SceneNode[];
}

export function node(
  kind: string,
  shape: Shape,
  attrs: Record<string, string | number>,
  extra: { data?: Record<string, string | number>; text?: string; children?: SceneNode[] } = {},
): SceneNode {
  return { kind, shape, attrs, ...extra };
}

/** Depth-first collection of every node with the given kind. */
export function collect(scene: Scene, kind: string): SceneNode[] {
  const found: SceneNode[] = [];
  const walk = (nodes: SceneNode[]) => {
    for (const n of nodes) {
      if (n.kind === kind) found.push(n);
      if (n.children) walk(n.children);
    }
  };
  walk(scene.nodes);
  return found;
}

const SVG_NS = 'http://www.w3.org/2000/svg';
const SHAPE_TAG: Record<Shape, string> = {
  group: 'g',
  circle: 'circle',
  line: 'line',
  rect: 'rect',
  path: 'path',
  text: 'text',
  polyline: 'polyline',
};

export function toSvg(scene: Scene, doc: Document): SVGSVGElement {
  const svg = doc.createElementNS(SVG_NS, 'svg') as SVGSVGElement;
  svg.setAttribute('viewBox', `0 0 ${scene.width} ${scene.height}`);
  svg.setAttribute('width', String(scene.width));
  svg.setAttribute('height', String(scene.height));
  for (const child of scene.nodes) {
    svg.appendChild(nodeToElement(child, doc));
  }
  return svg;
}

function nodeToElement(n: SceneNode, doc: Document): Element {
  const el = doc.createElementNS(SVG_NS, SHAPE_TAG[n.shape]);
  el.setAttribute('data-kind', n.kind);
  for (const [key, value] of Object.entries(n.attrs)) {
    el.setAttribute(key, String(value));
  }
  if (n.data) {
    for (const [key, value] of Object.entries(n.data)) {
      if (key === 'kind') throw new Error("data key 'kind' would clobber data-kind");
      el.setAttribute(`data-${key}`, String(value));
    }
  }
  if (n.text !== undefined) el.textContent = n.text;
  for (const child of n.children ?? []) {
    el.appendChild(nodeToElement(child, doc));
  }
  return el;
}

// ── Arc geometry (angles in radians, 0 at 12 o'clock, clockwise) ────────

export function polar(cx: number, cy: number, radius: number, angle: number): [number, number] {
  return [cx + radius * Math.sin(angle), cy - radius * Math.cos(angle)];
}

/** Donut-section path between two radii spanning [start, end]. */
export function annularSectorPath(
  cx: number,
  cy: number,
  innerRadius: number,
  outerRadius: number,
  start: number,
  end: number,
): string {
  const span = Math.min(end - start, 2 * Math.PI - 1e-6);
  const large = span > Math.PI ? 1 : 0;
  const [x0, y0] = polar(cx, cy, outerRadius, start);
  const [x1, y1] = polar(cx, cy, outerRadius, start + span);
  const [x2, y2] = polar(cx, cy, innerRadius, start + span);
  const [x3, y3] = polar(cx, cy, innerRadius, start);
  return (
    `M ${x0} ${y0} A ${outerRadius} ${outerRadius} 0 ${large} 1 ${x1} ${y1} ` +
    `L ${x2} ${y2} A ${innerRadius} ${innerRadius} 0 ${large} 0 ${x3} ${y3} Z`
  );
}

/** Pie sector from the center spanning [start, end]. */
export function sectorPath(
  cx: number,
  cy: number,
  radius: number,
  start: number,
  end: number,
): string {
  const span = Math.min(end - start, 2 * Math.PI - 1e-6);
  const large = span > Math.PI ? 1 : 0;
  const [x0, y0] = polar(cx, cy, radius, start);
  const [x1, y1] = polar(cx, cy, radius, start + span);
  return `M ${cx} ${cy} L ${x0} ${y0} A ${radius} ${radius} 0 ${large} 1 ${x1} ${y1} Z`;
}

/** Open arc stroke between two angles at one radius. */
export function arcPath(
  cx: number,
  cy: number,
  radius: number,
  start: number,
  end: number,
): string {
  const span = Math.min(end - start, 2 * Math.PI - 1e-6);
  const large = span > Math.PI ? 1 : 0;
  const [x0, y0] = polar(cx, cy, radius, start);
  const [x1, y1] = polar(cx, cy, radius, start + span);
  return `M ${x0} ${y0} A ${radius} ${radius} 0 ${large} 1 ${x1} ${y1}`;
}
