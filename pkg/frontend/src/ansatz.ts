/**
 * Ansatz matrix: datapoint rows against circuit-step columns.
 *
 * Folded cells are compact swatches; clicking a column header unfolds it
 * so every cell in the column shows the satellite chart of the state after
 * that step.  Rotation-column headers carry one donut ring per trainable
 * angle, its arc sized by how far the angle has drifted since epoch 0
 * (clamped at one full turn).  Rows are capped at MAX_ROWS selections.
 */

import { AngleDelta, CircuitSpec, StateDecomposition } from './api.js';
import { probabilityColor } from './color.js';
import { Scene, SceneNode, annularSectorPath, node } from './scene.js';
import { SATELLITE_SIZE, renderSatellite } from './satellite.js';

export const MAX_ROWS = 8;

const HEADER_HEIGHT = 64;
const GUTTER = 64;
const FOLDED = 36;
const UNFOLDED_SCALE = 0.52;
const UNFOLDED = Math.round(SATELLITE_SIZE * UNFOLDED_SCALE);
const RING_RADIUS = 7;
const TWO_PI = 2 * Math.PI;

export interface AnsatzRow {
  id: string;
  /** Captured boundaries from the states endpoint: steps + 1 entries. */
  states: StateDecomposition[];
}

export function buildAnsatzMatrix(
  circuit: CircuitSpec,
  epoch: number,
  rows: AnsatzRow[],
  deltas: AngleDelta[],
  unfolded: ReadonlySet<number>,
): Scene {
  const kept = rows.slice(0, MAX_ROWS);
  const deltaBySlot = new Map(deltas.map((d) => [d.param_slot, d]));
  const widths = circuit.steps.map((_, index) => (unfolded.has(index) ? UNFOLDED : FOLDED));
  const xs: number[] = [];
  let x = GUTTER;
  for (const width of widths) {
    xs.push(x);
    x += width + 6;
  }
  const rowHeight = widths.some((w) => w === UNFOLDED) ? UNFOLDED : FOLDED;
  const height = HEADER_HEIGHT + kept.length * (rowHeight + 6) + 10;
  const nodes: SceneNode[] = [];

  circuit.steps.forEach((step, index) => {
    const headerChildren: SceneNode[] = [
      node('column-label', 'text', {
        x: xs[index] + widths[index] / 2, y: 14, 'text-anchor': 'middle', 'font-size': 10,
      }, { text: step.kind, data: { step: index } }),
    ];
    if (step.kind === 'rotation') {
      const slots = step.gates
        .filter((g) => g.param_slot !== undefined)
        .map((g) => g.param_slot as number);
      slots.forEach((slot, k) => {
        const drift = deltaBySlot.get(slot);
        const fraction = drift ? Math.min(drift.magnitude, TWO_PI) / TWO_PI : 0;
        const cx = xs[index] + 12 + k * (2 * RING_RADIUS + 4);
        const cy = 34;
        headerChildren.push(
          node('angle-ring-track', 'circle', {
            cx, cy, r: RING_RADIUS, fill: 'none', stroke: '#ddd', 'stroke-width': 3,
          }),
          node('angle-ring', 'path', {
            d: fraction > 0
              ? annularSectorPath(cx, cy, RING_RADIUS - 1.5, RING_RADIUS + 1.5, 0, fraction * TWO_PI)
              : '',
            fill: '#7a4fc2',
          }, { data: { slot, epoch, fraction } }),
          node('ring-label', 'text', {
            x: cx, y: cy + RING_RADIUS + 9, 'text-anchor': 'middle', 'font-size': 7, fill: '#666',
          }, { text: `θ${slot}`, data: { slot } }),
        );
      });
    }
    nodes.push(
      node('step-header', 'group', {}, {
        data: { step: index, step_kind: step.kind, unfolded: unfolded.has(index) ? 1 : 0 },
        children: headerChildren,
      }),
    );
  });

  kept.forEach((row, r) => {
    const y = HEADER_HEIGHT + r * (rowHeight + 6);
    nodes.push(
      node('row-label', 'text', {
        x: GUTTER - 8, y: y + rowHeight / 2, 'text-anchor': 'end',
        'dominant-baseline': 'middle', 'font-size': 10,
      }, { text: row.id, data: { id: row.id } }),
    );
    circuit.steps.forEach((step, index) => {
      // states[0] is the initial state; column k shows the state after step k.
      const state = row.states[index + 1];
      const cellData = { row: row.id, step: index, unfolded: unfolded.has(index) ? 1 : 0 };
      if (unfolded.has(index)) {
        const chart = renderSatellite(state);
        nodes.push(
          node('matrix-cell', 'group', {
            transform: `translate(${xs[index]} ${y}) scale(${UNFOLDED_SCALE})`,
          }, { data: cellData, children: chart.nodes }),
        );
      } else {
        const top = state.basis.reduce((a, b) => (b.probability > a.probability ? b : a));
        nodes.push(
          node('matrix-cell', 'group', {}, {
            data: cellData,
            children: [
              node('cell-swatch', 'rect', {
                x: xs[index], y, width: FOLDED, height: FOLDED,
                fill: probabilityColor(top.probability), stroke: '#bbb', 'stroke-width': 0.6,
              }, { data: { label: top.label } }),
            ],
          }),
        );
      }
    });
  });

  return { width: x + 10, height, nodes };
}
