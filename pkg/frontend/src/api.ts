/**
 * Typed client for the read-only run service.
 *
 * Every shape below mirrors a wire payload exactly; nothing is derived
 * client-side except convenience accessors.  Basis labels are bitstrings
 * with qubit 0 first ("100" means qubit 0 reads 1).
 */

// ── Wire types ───────────────────────────────────────────────────────────

export interface RunSummary {
  run_id: string;
  dataset_kind: string;
  num_qubits: number;
  epochs: number;
  final_accuracy: number;
  created_at: string;
}

export interface GateSpec {
  kind: string;
  qubits: number[];
  angle?: number;
  feature?: number;
  param_slot?: number;
}

export interface StepSpec {
  kind: 'encoding' | 'rotation' | 'entangling';
  gates: GateSpec[];
}

export interface CircuitSpec {
  num_qubits: number;
  feature_dim: number;
  ansatz_layers: number;
  measured_qubit: number;
  steps: StepSpec[];
}

export interface DataPoint {
  id: string;
  features: number[];
  label: string;
}

export interface RunDetail {
  schema_version: number;
  run_id: string;
  created_at: string;
  circuit: CircuitSpec;
  config: { epochs: number; learning_rate: number; seed: number; optimizer: string };
  dataset: { kind: string; points: DataPoint[] };
  sampled_epochs: number[];
  summary: { final_loss: number; final_accuracy: number };
}

export interface Metrics {
  epochs: number[];
  loss: number[];
  accuracy: number[];
  thetas: number[][];
}

export interface BasisEntry {
  label: string;
  probability: number;
}

export interface MarginalEntry {
  qubit: number;
  value: number;
  total: number;
  contributions: BasisEntry[];
}

/** One captured circuit step: the satellite-chart model. */
export interface StateDecomposition {
  num_qubits: number;
  basis: BasisEntry[];
  marginals: MarginalEntry[];
  amplitudes?: [number, number][];
}

export interface GridCell {
  i: number;
  j: number;
  center: [number, number];
  expectation: number;
  predicted_class: string;
  p0: number;
  p1: number;
  basis_probabilities: BasisEntry[];
}

export interface GridPayload {
  epoch: number;
  cells: GridCell[];
}

export interface AngleDelta {
  param_slot: number;
  epoch: number;
  delta: number;
  magnitude: number;
}

export function marginal(dec: StateDecomposition, qubit: number, value: number): MarginalEntry {
  const found = dec.marginals.find((m) => m.qubit === qubit && m.value === value);
  if (!found) throw new Error(`marginal q${qubit}=${value} missing`);
  return found;
}

// ── Client ───────────────────────────────────────────────────────────────

export class ApiClient {
  constructor(private readonly base: string = '') {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(`${this.base}${path}`);
    if (!response.ok) {
      throw new Error(`GET ${path} failed: ${response.status}`);
    }
    return (await response.json()) as T;
  }

  runs(): Promise<RunSummary[]> {
    return this.get('/api/runs');
  }

  run(runId: string): Promise<RunDetail> {
    return this.get(`/api/runs/${encodeURIComponent(runId)}`);
  }

  metrics(runId: string): Promise<Metrics> {
    return this.get(`/api/runs/${encodeURIComponent(runId)}/metrics`);
  }

  states(runId: string, epoch: number, datapointId: string): Promise<StateDecomposition[]> {
    return this.get(
      `/api/runs/${encodeURIComponent(runId)}/epochs/${epoch}/datapoints/${encodeURIComponent(datapointId)}/states`,
    );
  }

  grid(runId: string, epoch: number): Promise<GridPayload> {
    return this.get(`/api/runs/${encodeURIComponent(runId)}/epochs/${epoch}/grid`);
  }

  angles(runId: string, epoch: number): Promise<AngleDelta[]> {
    return this.get(`/api/runs/${encodeURIComponent(runId)}/epochs/${epoch}/angles`);
  }
}

/** Snap to the nearest recorded epoch (traces/grids exist only there). */
export function nearestSampledEpoch(sampled: number[], wanted: number): number {
  let best = sampled[0];
  for (const epoch of sampled) {
    if (Math.abs(epoch - wanted) < Math.abs(best - wanted)) best = epoch;
  }
  return best;
}
