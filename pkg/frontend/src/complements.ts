/**
 * Complementary views: dataset scatter, training statistic lines, and the
 * circuit diagram whose theta labels line up with the ansatz columns.
 */

import { CircuitSpec, DataPoint, Metrics } from './api.js';
import { classColor } from './color.js';
import { Scene, SceneNode, node } from './scene.js';

export const SCATTER_SIZE = 230;

export function buildScatter(points: DataPoint[], selected: ReadonlySet<string>): Scene {
  const margin = 14;
  const span = SCATTER_SIZE - 2 * margin;
  const toScreen = (x: number, y: number): [number, number] => [
    margin + ((x + 1) / 2) * span,
    margin + (1 - (y + 1) / 2) * span,
  ];
  const nodes: SceneNode[] = [
    node('scatter-frame', 'rect', {
      x: margin, y: margin, width: span, height: span,
      fill: '#fafafa', stroke: '#ccc', 'stroke-width': 1,
    }),
  ];
  for (const point of points) {
    const [cx, cy] = toScreen(point.features[0], point.features[1]);
    const isSelected = selected.has(point.id);
    nodes.push(
      node('scatter-point', 'circle', {
        cx, cy, r: isSelected ? 5.5 : 4,
        fill: classColor(point.label, 'strong'),
        stroke: isSelected ? '#111' : '#fff',
        'stroke-width': isSelected ? 2 : 0.8,
        cursor: 'pointer',
      }, { data: { id: point.id, label: point.label, selected: isSelected ? 1 : 0 } }),
    );
  }
  return { width: SCATTER_SIZE, height: SCATTER_SIZE, nodes };
}

export type Statistic = 'loss' | 'accuracy' | 'angle';

export const CHART_WIDTH = 330;
export const CHART_HEIGHT = 170;

const SERIES_COLORS = [
  '#2563eb', '#059669', '#d97706', '#dc2626', '#7c3aed', '#0d9488',
  '#b45309', '#4338ca', '#15803d', '#be123c', '#0369a1', '#a21caf',
];

export function buildMetricChart(metrics: Metrics, statistic: Statistic, epoch: number): Scene {
  const margin = { left: 34, right: 8, top: 10, bottom: 18 };
  const innerW = CHART_WIDTH - margin.left - margin.right;
  const innerH = CHART_HEIGHT - margin.top - margin.bottom;
  const epochs = metrics.epochs;
  const lastEpoch = Math.max(1, epochs[epochs.length - 1]);

  let series: { name: string; values: number[] }[];
  if (statistic === 'loss') {
    series = [{ name: 'loss', values: metrics.loss }];
  } else if (statistic === 'accuracy') {
    series = [{ name: 'accuracy', values: metrics.accuracy }];
  } else {
    const slots = metrics.thetas[0]?.length ?? 0;
    series = Array.from({ length: slots }, (_, slot) => ({
      name: `θ${slot}`,
      values: metrics.thetas.map((row) => row[slot]),
    }));
  }
  const flat = series.flatMap((s) => s.values);
  const lo = Math.min(...flat);
  const hi = Math.max(...flat);
  const spanY = hi - lo || 1;
  const sx = (e: number) => margin.left + (e / lastEpoch) * innerW;
  const sy = (v: number) => margin.top + (1 - (v - lo) / spanY) * innerH;

  const nodes: SceneNode[] = [
    node('chart-frame', 'rect', {
      x: margin.left, y: margin.top, width: innerW, height: innerH,
      fill: 'none', stroke: '#ddd', 'stroke-width': 1,
    }),
    node('chart-ymax', 'text', {
      x: margin.left - 4, y: margin.top + 8, 'text-anchor': 'end', 'font-size': 8, fill: '#777',
    }, { text: hi.toFixed(2) }),
    node('chart-ymin', 'text', {
      x: margin.left - 4, y: margin.top + innerH, 'text-anchor': 'end', 'font-size': 8, fill: '#777',
    }, { text: lo.toFixed(2) }),
  ];
  series.forEach((s, k) => {
    const pointsAttr = epochs.map((e, idx) => `${sx(e)},${sy(s.values[idx])}`).join(' ');
    nodes.push(
      node('metric-line', 'polyline', {
        points: pointsAttr, fill: 'none',
        stroke: SERIES_COLORS[k % SERIES_COLORS.length],
        'stroke-width': statistic === 'angle' ? 1.1 : 1.8,
      }, { data: { series: s.name, statistic } }),
    );
  });
  nodes.push(
    node('epoch-cursor', 'line', {
      x1: sx(epoch), y1: margin.top, x2: sx(epoch), y2: margin.top + innerH,
      stroke: '#999', 'stroke-dasharray': '3 2', 'stroke-width': 1,
    }, { data: { epoch } }),
  );
  return { width: CHART_WIDTH, height: CHART_HEIGHT, nodes };
}

const WIRE_GAP = 30;
const COLUMN_GAP = 56;

export function buildCircuitDiagram(circuit: CircuitSpec): Scene {
  const left = 40;
  const top = 18;
  const width = left + circuit.steps.length * COLUMN_GAP + 20;
  const height = top + circuit.num_qubits * WIRE_GAP + 6;
  const wireY = (q: number) => top + q * WIRE_GAP + WIRE_GAP / 2;
  const nodes: SceneNode[] = [];

  for (let q = 0; q < circuit.num_qubits; q++) {
    nodes.push(
      node('diagram-wire', 'line', {
        x1: left - 20, y1: wireY(q), x2: width - 10, y2: wireY(q),
        stroke: '#888', 'stroke-width': 1,
      }, { data: { qubit: q } }),
      node('wire-label', 'text', {
        x: left - 24, y: wireY(q), 'text-anchor': 'end', 'dominant-baseline': 'middle',
        'font-size': 9,
      }, { text: `q${q}` }),
    );
  }

  circuit.steps.forEach((step, index) => {
    const cx = left + index * COLUMN_GAP + COLUMN_GAP / 2;
    step.gates.forEach((gate) => {
      if (gate.kind === 'cnot') {
        const [control, target] = gate.qubits;
        nodes.push(
          node('diagram-gate', 'group', {}, {
            data: { gate: 'cnot', step: index, control, target },
            children: [
              node('cnot-stem', 'line', {
                x1: cx, y1: wireY(control), x2: cx, y2: wireY(target),
                stroke: '#333', 'stroke-width': 1.2,
              }),
              node('cnot-control', 'circle', { cx, cy: wireY(control), r: 3, fill: '#333' }),
              node('cnot-target', 'circle', {
                cx, cy: wireY(target), r: 6, fill: 'none', stroke: '#333', 'stroke-width': 1.2,
              }),
            ],
          }),
        );
        return;
      }
      const q = gate.qubits[0];
      const label =
        gate.param_slot !== undefined
          ? `θ${gate.param_slot}`
          : gate.feature !== undefined
            ? `x${gate.feature}`
            : '';
      nodes.push(
        node('diagram-gate', 'group', {}, {
          data: {
            gate: gate.kind, step: index, qubit: q,
            ...(gate.param_slot !== undefined ? { slot: gate.param_slot } : {}),
          },
          children: [
            node('gate-box', 'rect', {
              x: cx - 13, y: wireY(q) - 9, width: 26, height: 18, rx: 3,
              fill: gate.param_slot !== undefined ? '#ede4fb' : '#e9f2e6',
              stroke: '#555', 'stroke-width': 0.8,
            }),
            node('gate-label', 'text', {
              x: cx, y: wireY(q) - 1, 'text-anchor': 'middle', 'font-size': 7,
            }, { text: gate.kind.toUpperCase() }),
            node('gate-sublabel', 'text', {
              x: cx, y: wireY(q) + 7, 'text-anchor': 'middle', 'font-size': 7, fill: '#555',
            }, { text: label }),
          ],
        }),
      );
    });
    nodes.push(
      node('diagram-step-label', 'text', {
        x: cx, y: 10, 'text-anchor': 'middle', 'font-size': 7, fill: '#888',
      }, { text: step.kind.slice(0, 3), data: { step: index } }),
    );
  });

  return { width, height, nodes };
}
