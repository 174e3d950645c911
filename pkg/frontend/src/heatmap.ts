/**
 * Augmented heatmap over the sampled feature plane.
 *
 * Coarse mode tiles the plane: tile color is the predicted class and a pie
 * sector inside each tile grows with |expectation| (the confidence).
 * Clicking a tile opens fine mode: an outer donut with one section per
 * basis state (blue family when the measured qubit reads 0, red when 1),
 * the larger class block acting as the minuend, a thin inner arc marking
 * the subtrahend, and a center pie sized by their difference.  Training
 * points overplot the coarse grid as dots in their true class color.
 */

import { DataPoint, GridCell, GridPayload } from './api.js';
import { classColor } from './color.js';
import { Scene, SceneNode, annularSectorPath, arcPath, node, sectorPath } from './scene.js';

export const GRID_SIZE = 15;
export const TILE = 26;
export const MARGIN = 8;
export const COARSE_SIZE = GRID_SIZE * TILE + 2 * MARGIN;

const TWO_PI = 2 * Math.PI;

function tileOrigin(i: number, j: number): [number, number] {
  // Feature y grows upward; screen y grows downward.
  return [MARGIN + i * TILE, MARGIN + (GRID_SIZE - 1 - j) * TILE];
}

export function featureToScreen(x: number, y: number): [number, number] {
  const span = GRID_SIZE * TILE;
  return [MARGIN + ((x + 1) / 2) * span, MARGIN + (1 - (y + 1) / 2) * span];
}

export function buildCoarseHeatmap(grid: GridPayload | null, points: DataPoint[]): Scene {
  if (!grid || !grid.cells || grid.cells.length === 0) {
    return {
      width: COARSE_SIZE,
      height: COARSE_SIZE,
      nodes: [
        node('empty-state', 'text', {
          x: COARSE_SIZE / 2, y: COARSE_SIZE / 2, 'text-anchor': 'middle', 'font-size': 12,
          fill: '#888',
        }, { text: 'no feature grid recorded for this epoch' }),
      ],
    };
  }

  const nodes: SceneNode[] = [];
  for (const cell of grid.cells) {
    const [x, y] = tileOrigin(cell.i, cell.j);
    const confidence = Math.abs(cell.expectation);
    const cx = x + TILE / 2;
    const cy = y + TILE / 2;
    const children: SceneNode[] = [
      node('tile-background', 'rect', {
        x, y, width: TILE, height: TILE,
        fill: classColor(cell.predicted_class, 'faint'),
        stroke: '#ffffff', 'stroke-width': 0.5,
      }),
      node('confidence-pie', 'path', {
        d: confidence > 0 ? sectorPath(cx, cy, TILE * 0.42, 0, confidence * TWO_PI) : '',
        fill: classColor(cell.predicted_class, 'strong'),
        opacity: 0.85,
      }, { data: { fraction: confidence } }),
    ];
    nodes.push(
      node('heatmap-tile', 'group', {}, {
        data: {
          i: cell.i, j: cell.j,
          class: cell.predicted_class,
          expectation: cell.expectation,
        },
        children,
      }),
    );
  }

  for (const point of points) {
    const [px, py] = featureToScreen(point.features[0], point.features[1]);
    nodes.push(
      node('datapoint-dot', 'circle', {
        cx: px, cy: py, r: 3.2,
        fill: classColor(point.label, 'strong'),
        stroke: '#222', 'stroke-width': 0.7,
      }, { data: { id: point.id, label: point.label } }),
    );
  }

  return { width: COARSE_SIZE, height: COARSE_SIZE, nodes };
}

export const FINE_SIZE = 220;

export function buildFineCell(cell: GridCell, measuredQubit: number): Scene {
  const cx = FINE_SIZE / 2;
  const cy = FINE_SIZE / 2;
  const outer = 92;
  const inner = 64;
  const nodes: SceneNode[] = [];

  // Group sections so the measured-qubit-0 states form one contiguous
  // block starting at 12 o'clock, followed by the 1 states: the block
  // spans are then exactly p0 and p1 of the circle.
  const zeros = cell.basis_probabilities.filter((b) => b.label.charAt(measuredQubit) === '0');
  const ones = cell.basis_probabilities.filter((b) => b.label.charAt(measuredQubit) === '1');
  let angle = 0;
  for (const entry of [...zeros, ...ones]) {
    const digit = entry.label.charAt(measuredQubit) === '0' ? 0 : 1;
    const span = entry.probability * TWO_PI;
    nodes.push(
      node('donut-section', 'path', {
        d: annularSectorPath(cx, cy, inner, outer, angle, angle + span),
        fill: digit === 0 ? classColor('A', 'light') : classColor('B', 'light'),
        stroke: '#ffffff', 'stroke-width': 1,
      }, {
        data: {
          label: entry.label,
          probability: entry.probability,
          digit,
          fraction: entry.probability,
        },
      }),
    );
    angle += span;
  }

  // Minuend = the larger of the two blocks; the inner arc repeats the
  // subtrahend under it so the surplus reads off as the difference.
  const minuendIsZero = cell.p0 >= cell.p1;
  const subtrahend = Math.min(cell.p0, cell.p1);
  const blockStart = minuendIsZero ? 0 : cell.p0 * TWO_PI;
  nodes.push(
    node('subtrahend-arc', 'path', {
      d: arcPath(cx, cy, inner - 6, blockStart, blockStart + subtrahend * TWO_PI),
      stroke: minuendIsZero ? classColor('B', 'strong') : classColor('A', 'strong'),
      'stroke-width': 4, fill: 'none',
    }, { data: { fraction: subtrahend } }),
  );

  const difference = Math.abs(cell.p0 - cell.p1);
  nodes.push(
    node('expectation-pie', 'path', {
      d: difference > 0
        ? sectorPath(cx, cy, inner - 14, blockStart, blockStart + difference * TWO_PI)
        : '',
      fill: classColor(cell.predicted_class, 'strong'),
      opacity: 0.9,
    }, { data: { fraction: difference, class: cell.predicted_class } }),
  );

  nodes.push(
    node('fine-label', 'text', {
      x: cx, y: cy + 4, 'text-anchor': 'middle', 'font-size': 11, fill: '#333',
    }, {
      text: `E=${cell.expectation.toFixed(3)}`,
      data: { i: cell.i, j: cell.j, p0: cell.p0, p1: cell.p1 },
    }),
  );

  return { width: FINE_SIZE, height: FINE_SIZE, nodes };
}
