/**
 * Fixture loading: a real recorded run checked in under fixtures/store/,
 * plus a fetch stub that answers the API routes from those files exactly
 * the way the Python service would.
 */

import { readFileSync, readdirSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import {
  AngleDelta,
  GridPayload,
  Metrics,
  RunDetail,
  RunSummary,
  StateDecomposition,
} from '../src/api.js';

const HERE = dirname(fileURLToPath(import.meta.url));
const STORE = join(HERE, 'fixtures', 'store');

interface SnapshotFile {
  snapshots: { epoch: number; loss: number; accuracy: number; thetas: number[] }[];
}

interface TraceFile {
  epoch: number;
  states: Record<string, StateDecomposition[]>;
}

export interface Fixture {
  runId: string;
  detail: RunDetail;
  snapshots: SnapshotFile['snapshots'];
  metrics: Metrics;
  summaries: RunSummary[];
  grids: Map<number, GridPayload>;
  traces: Map<number, TraceFile>;
  angles: Map<number, AngleDelta[]>;
}

function readJson<T>(...parts: string[]): T {
  return JSON.parse(readFileSync(join(...parts), 'utf-8')) as T;
}

export function loadFixture(): Fixture {
  const runId = readdirSync(STORE).filter((name) => !name.startsWith('.'))[0];
  const runDir = join(STORE, runId);
  const detail = readJson<RunDetail>(runDir, 'meta.json');
  const { snapshots } = readJson<SnapshotFile>(runDir, 'snapshots.json');

  const metrics: Metrics = {
    epochs: snapshots.map((s) => s.epoch),
    loss: snapshots.map((s) => s.loss),
    accuracy: snapshots.map((s) => s.accuracy),
    thetas: snapshots.map((s) => s.thetas),
  };
  const summaries: RunSummary[] = [
    {
      run_id: detail.run_id,
      dataset_kind: detail.dataset.kind,
      num_qubits: detail.circuit.num_qubits,
      epochs: detail.config.epochs,
      final_accuracy: detail.summary.final_accuracy,
      created_at: detail.created_at,
    },
  ];

  const grids = new Map<number, GridPayload>();
  const traces = new Map<number, TraceFile>();
  for (const epoch of detail.sampled_epochs) {
    grids.set(epoch, readJson<GridPayload>(runDir, 'grids', `${epoch}.json`));
    traces.set(epoch, readJson<TraceFile>(runDir, 'traces', `${epoch}.json`));
  }

  const angles = new Map<number, AngleDelta[]>();
  const reference = snapshots[0].thetas;
  for (const snap of snapshots) {
    angles.set(
      snap.epoch,
      snap.thetas.map((theta, slot) => {
        const delta = theta - reference[slot];
        return {
          param_slot: slot,
          epoch: snap.epoch,
          delta,
          magnitude: Math.min(Math.abs(delta), 2 * Math.PI),
        };
      }),
    );
  }

  return { runId, detail, snapshots, metrics, summaries, grids, traces, angles };
}

function jsonResponse(payload: unknown, status = 200) {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: async () => payload,
  } as Response;
}

/** Stand-in for global fetch answering the documented API routes. */
export function fixtureFetch(fixture: Fixture): (input: RequestInfo | URL) => Promise<Response> {
  return async (input) => {
    const raw = typeof input === 'string' ? input : input instanceof URL ? input.href : input.url;
    const path = new URL(raw, 'http://fixture.local').pathname;
    const notFound = (message: string) =>
      jsonResponse({ http_status: 404, code: 'not_found', message }, 404);

    if (path === '/api/runs') return jsonResponse(fixture.summaries);

    const parts = path.split('/').filter(Boolean); // ["api", "runs", id, ...]
    if (parts[0] !== 'api' || parts[1] !== 'runs') return notFound(path);
    const runId = decodeURIComponent(parts[2] ?? '');
    if (runId !== fixture.runId) return notFound(`run ${runId}`);
    if (parts.length === 3) return jsonResponse(fixture.detail);
    if (parts[3] === 'metrics') return jsonResponse(fixture.metrics);
    if (parts[3] !== 'epochs') return notFound(path);

    const epoch = Number(parts[4]);
    if (!Number.isInteger(epoch)) {
      return jsonResponse({ http_status: 400, code: 'bad_request', message: 'epoch' }, 400);
    }
    if (parts[5] === 'angles') {
      const deltas = fixture.angles.get(epoch);
      return deltas ? jsonResponse(deltas) : notFound(`epoch ${epoch}`);
    }
    if (parts[5] === 'grid') {
      const grid = fixture.grids.get(epoch);
      return grid ? jsonResponse(grid) : notFound(`epoch ${epoch}`);
    }
    if (parts[5] === 'datapoints' && parts[7] === 'states') {
      const trace = fixture.traces.get(epoch);
      const states = trace?.states[decodeURIComponent(parts[6])];
      return states ? jsonResponse(states) : notFound(`states ${parts[6]} @ ${epoch}`);
    }
    return notFound(path);
  };
}

// ── Synthetic models for geometry-focused tests ──────────────────────────

export function syntheticDecomposition(probabilities: number[]): StateDecomposition {
  const n = Math.log2(probabilities.length);
  if (!Number.isInteger(n)) throw new Error('need a power-of-two probability list');
  const label = (b: number) => b.toString(2).padStart(n, '0');
  const basis = probabilities.map((p, b) => ({ label: label(b), probability: p }));
  const marginals = [];
  for (let qubit = 0; qubit < n; qubit++) {
    for (const value of [0, 1]) {
      const contributions = basis.filter((e) => Number(e.label.charAt(qubit)) === value);
      marginals.push({
        qubit,
        value,
        total: contributions.reduce((acc, e) => acc + e.probability, 0),
        contributions,
      });
    }
  }
  return { num_qubits: n, basis, marginals };
}

/** The reference encoding distribution for the point [-0.58, 0.10]. */
export function referenceEncodingModel(): StateDecomposition {
  const c1 = Math.cos(0.29) ** 2;
  const s1 = Math.sin(0.29) ** 2;
  const c2 = Math.cos(0.05) ** 2;
  const s2 = Math.sin(0.05) ** 2;
  // Order: 000, 001, 010, 011, 100, 101, 110, 111.
  return syntheticDecomposition([c1 * c2, 0, c1 * s2, 0, s1 * c2, 0, s1 * s2, 0]);
}
