/**
 * Satellite chart: the radial view correlating basis states with
 * single-qubit marginals.
 *
 * Geometry: 2^N basis circles sit concentrically around the center, one
 * axis per qubit radiates outward with the |0> anchor on its left and the
 * |1> anchor on its right, and every basis circle sends one line per
 * qubit to the anchor matching its digit.  An arc at each anchor encodes
 * the marginal total, and a radial stacked bar breaks that total into the
 * contributing basis states.  Line width deliberately encodes nothing.
 */

import { StateDecomposition, marginal } from './api.js';
import { probabilityColor } from './color.js';
import { Scene, SceneNode, arcPath, node, polar } from './scene.js';

export const SATELLITE_SIZE = 260;

const CX = SATELLITE_SIZE / 2;
const CY = SATELLITE_SIZE / 2;
const R_BASIS_RING = 52;
const R_AXIS_INNER = 74;
const R_AXIS_OUTER = 92;
const R_ANCHOR = 86;
const R_MARGINAL_ARC = 97;
const R_BAR_BASE = 103;
const BAR_MAX_LENGTH = 26;
const BAR_WIDTH = 7;
const ANCHOR_SPREAD = 0.17; // radians between an axis and its two anchors
const ARC_HALF_SPAN = 0.12;

function axisAngle(qubit: number, numQubits: number): number {
  return (2 * Math.PI * qubit) / numQubits;
}

function anchorAngle(qubit: number, value: number, numQubits: number): number {
  return axisAngle(qubit, numQubits) + (value === 0 ? -ANCHOR_SPREAD : ANCHOR_SPREAD);
}

function digit(label: string, qubit: number): number {
  return label.charCodeAt(qubit) - 48;
}

export function buildSatellite(model: StateDecomposition): Scene {
  const n = model.num_qubits;
  const size = 1 << n;
  if (!Number.isInteger(n) || n < 1 || model.basis.length !== size) {
    throw new Error(`basis length ${model.basis?.length} does not match ${n} qubits`);
  }
  for (let qubit = 0; qubit < n; qubit++) {
    marginal(model, qubit, 0);
    marginal(model, qubit, 1);
  }

  const nodes: SceneNode[] = [];
  const circleRadius = Math.min(13, (Math.PI * R_BASIS_RING) / size - 1.5);

  // Axes with their two value anchors.
  for (let qubit = 0; qubit < n; qubit++) {
    const angle = axisAngle(qubit, n);
    const [x0, y0] = polar(CX, CY, R_AXIS_INNER, angle);
    const [x1, y1] = polar(CX, CY, R_AXIS_OUTER, angle);
    nodes.push(
      node('axis', 'line', { x1: x0, y1: y0, x2: x1, y2: y1, stroke: '#666', 'stroke-width': 1.2 }, {
        data: { qubit },
      }),
    );
    const [lx, ly] = polar(CX, CY, R_AXIS_OUTER + 12, angle);
    nodes.push(
      node('axis-label', 'text', {
        x: lx, y: ly, 'text-anchor': 'middle', 'dominant-baseline': 'middle', 'font-size': 11,
      }, { text: `q${qubit}`, data: { qubit } }),
    );
    for (const value of [0, 1]) {
      const [ax, ay] = polar(CX, CY, R_ANCHOR + 8, anchorAngle(qubit, value, n));
      nodes.push(
        node('anchor-label', 'text', {
          x: ax, y: ay, 'text-anchor': 'middle', 'dominant-baseline': 'middle',
          'font-size': 8, fill: '#888',
        }, { text: String(value), data: { qubit, value } }),
      );
    }
  }

  // Correspondence lines first so circles draw on top of them.
  for (let b = 0; b < size; b++) {
    const entry = model.basis[b];
    const color = probabilityColor(entry.probability);
    const [cx, cy] = polar(CX, CY, R_BASIS_RING, (2 * Math.PI * b) / size);
    for (let qubit = 0; qubit < n; qubit++) {
      const [ax, ay] = polar(CX, CY, R_ANCHOR, anchorAngle(qubit, digit(entry.label, qubit), n));
      nodes.push(
        node('correspondence-line', 'line', {
          x1: cx, y1: cy, x2: ax, y2: ay, stroke: color, 'stroke-width': 1.4,
        }, { data: { label: entry.label, qubit, value: digit(entry.label, qubit) } }),
      );
    }
  }

  // Basis circles colored by probability.
  for (let b = 0; b < size; b++) {
    const entry = model.basis[b];
    const [cx, cy] = polar(CX, CY, R_BASIS_RING, (2 * Math.PI * b) / size);
    nodes.push(
      node('basis-circle', 'circle', {
        cx, cy, r: circleRadius,
        fill: probabilityColor(entry.probability),
        stroke: '#9a9a9a', 'stroke-width': 0.6,
      }, { data: { label: entry.label, probability: entry.probability } }),
    );
    if (n <= 3) {
      nodes.push(
        node('basis-label', 'text', {
          x: cx, y: cy, 'text-anchor': 'middle', 'dominant-baseline': 'middle',
          'font-size': 7, fill: entry.probability > 0.55 ? '#fff' : '#555',
        }, { text: entry.label, data: { label: entry.label } }),
      );
    }
  }

  // Marginal arcs and stacked bars at every (qubit, value) anchor.
  for (let qubit = 0; qubit < n; qubit++) {
    for (const value of [0, 1]) {
      const m = marginal(model, qubit, value);
      const angle = anchorAngle(qubit, value, n);
      nodes.push(
        node('marginal-arc', 'path', {
          d: arcPath(CX, CY, R_MARGINAL_ARC, angle - ARC_HALF_SPAN, angle + ARC_HALF_SPAN),
          stroke: probabilityColor(m.total), 'stroke-width': 5, fill: 'none',
        }, { data: { qubit, value, total: m.total } }),
      );

      const segments: SceneNode[] = [];
      let offset = 0;
      for (const contribution of m.contributions) {
        const height = contribution.probability * BAR_MAX_LENGTH;
        segments.push(
          node('bar-segment', 'rect', {
            x: -BAR_WIDTH / 2, y: -(offset + height), width: BAR_WIDTH, height,
            fill: probabilityColor(contribution.probability),
            stroke: '#777', 'stroke-width': 0.4,
          }, { data: { label: contribution.label, probability: contribution.probability, height } }),
        );
        offset += height;
      }
      const [bx, by] = polar(CX, CY, R_BAR_BASE, angle);
      const degrees = (angle * 180) / Math.PI;
      nodes.push(
        node('stacked-bar', 'group', {
          transform: `translate(${bx} ${by}) rotate(${degrees})`,
        }, {
          data: { qubit, value, total: m.total, height: offset },
          children: segments,
        }),
      );
    }
  }

  return { width: SATELLITE_SIZE, height: SATELLITE_SIZE, nodes };
}

/** Total-function wrapper: malformed models render a visible placeholder. */
export function renderSatellite(model: StateDecomposition): Scene {
  try {
    return buildSatellite(model);
  } catch (error) {
    return {
      width: SATELLITE_SIZE,
      height: SATELLITE_SIZE,
      nodes: [
        node('error-placeholder', 'text', {
          x: CX, y: CY, 'text-anchor': 'middle', 'font-size': 11, fill: '#a33',
        }, { text: `invalid state data: ${(error as Error).message}` }),
      ],
    };
  }
}
