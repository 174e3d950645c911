/**
 * Application shell: holds the selection state (run, epoch, datapoints,
 * unfolded columns, statistic, drilled-down cell), fetches from the API,
 * and re-renders each view into its panel.  Fetches are last-request-wins
 * per view so stale responses are discarded; rendering never mutates the
 * fetched payloads.
 */

import {
  AngleDelta,
  ApiClient,
  GridPayload,
  Metrics,
  RunDetail,
  StateDecomposition,
  nearestSampledEpoch,
} from './api.js';
import { AnsatzRow, MAX_ROWS, buildAnsatzMatrix } from './ansatz.js';
import { buildCircuitDiagram, buildMetricChart, buildScatter, Statistic } from './complements.js';
import { buildCoarseHeatmap, buildFineCell } from './heatmap.js';
import { Scene, toSvg } from './scene.js';
import { renderSatellite } from './satellite.js';

export class App {
  private api: ApiClient;
  private root: HTMLElement;
  private doc: Document;

  detail: RunDetail | null = null;
  metrics: Metrics | null = null;
  requestedEpoch = 0;
  epoch = 0; // snapped to a sampled epoch
  statistic: Statistic = 'loss';
  selection: string[] = [];
  unfolded = new Set<number>();
  fineCell: { i: number; j: number } | null = null;

  private grid: GridPayload | null = null;
  private angles: AngleDelta[] = [];
  private states = new Map<string, StateDecomposition[]>();
  private fetchSeq = 0;

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;
    this.doc = root.ownerDocument;
    this.root.addEventListener('click', (event) => this.onClick(event));
    const slider = this.panel('epoch-slider') as HTMLInputElement | null;
    slider?.addEventListener('input', () => this.setEpoch(Number(slider.value)));
    slider?.addEventListener('change', () => this.setEpoch(Number(slider.value)));
  }

  private panel(id: string): HTMLElement | null {
    return this.root.querySelector(`#${id}`);
  }

  private lastOperation: (() => Promise<void>) | null = null;

  /** Run a fetch-backed operation; on failure show the error plus a retry
   * button that re-invokes it. */
  private async guarded(operation: () => Promise<void>): Promise<void> {
    this.lastOperation = operation;
    const status = this.panel('status');
    try {
      await operation();
      if (status) status.textContent = '';
    } catch (error) {
      if (!status) return;
      status.textContent = `load failed: ${(error as Error).message} `;
      const retry = this.doc.createElement('button');
      retry.textContent = 'retry';
      retry.setAttribute('data-action', 'retry');
      retry.onclick = () => void this.guarded(this.lastOperation!);
      status.appendChild(retry);
    }
  }

  start(): Promise<void> {
    return this.guarded(() => this.startInner());
  }

  private async startInner(): Promise<void> {
    const runs = await this.api.runs();
    const select = this.panel('run-select') as HTMLSelectElement | null;
    if (select) {
      select.innerHTML = '';
      for (const run of runs) {
        const option = this.doc.createElement('option');
        option.value = run.run_id;
        option.textContent =
          `${run.run_id} (${run.dataset_kind}, ${run.num_qubits}q, acc ${run.final_accuracy.toFixed(2)})`;
        select.appendChild(option);
      }
      select.onchange = () => void this.loadRun(select.value);
    }
    if (runs.length > 0) {
      await this.loadRun(runs[0].run_id);
    } else {
      const status = this.panel('status');
      if (status) status.textContent = 'store is empty; record a run first';
    }
  }

  loadRun(runId: string): Promise<void> {
    return this.guarded(() => this.loadRunInner(runId));
  }

  private async loadRunInner(runId: string): Promise<void> {
    const seq = ++this.fetchSeq;
    const detail = await this.api.run(runId);
    const metrics = await this.api.metrics(runId);
    if (seq !== this.fetchSeq) return; // a newer load superseded this one
    this.detail = detail;
    this.metrics = metrics;
    this.selection = [];
    this.unfolded = new Set([1]); // first rotation column starts unfolded
    this.fineCell = null;
    this.states.clear();
    const slider = this.panel('epoch-slider') as HTMLInputElement | null;
    if (slider) {
      slider.min = '0';
      slider.max = String(detail.config.epochs);
      slider.value = String(detail.config.epochs);
    }
    await this.setEpoch(detail.config.epochs);
  }

  setEpoch(wanted: number): Promise<void> {
    return this.guarded(() => this.setEpochInner(wanted));
  }

  private async setEpochInner(wanted: number): Promise<void> {
    if (!this.detail) return;
    const seq = ++this.fetchSeq;
    this.requestedEpoch = wanted;
    this.epoch = nearestSampledEpoch(this.detail.sampled_epochs, wanted);
    const runId = this.detail.run_id;
    const [grid, angles] = await Promise.all([
      this.api.grid(runId, this.epoch),
      this.api.angles(runId, this.epoch),
    ]);
    const stateEntries = await Promise.all(
      this.selection.map(async (id) => [id, await this.api.states(runId, this.epoch, id)] as const),
    );
    if (seq !== this.fetchSeq) return;
    this.grid = grid;
    this.angles = angles;
    this.states.clear();
    for (const [id, states] of stateEntries) this.states.set(`${this.epoch}:${id}`, states);
    this.renderAll();
  }

  async toggleDatapoint(id: string): Promise<void> {
    if (!this.detail) return;
    const index = this.selection.indexOf(id);
    if (index >= 0) {
      this.selection.splice(index, 1);
    } else {
      this.selection.push(id);
      if (this.selection.length > MAX_ROWS) this.selection.shift();
      const seq = this.fetchSeq;
      const states = await this.api.states(this.detail.run_id, this.epoch, id);
      if (seq !== this.fetchSeq) return;
      this.states.set(`${this.epoch}:${id}`, states);
    }
    this.renderAll();
  }

  setStatistic(statistic: Statistic): void {
    this.statistic = statistic;
    this.renderMetrics();
  }

  toggleColumn(step: number): void {
    if (this.unfolded.has(step)) this.unfolded.delete(step);
    else this.unfolded.add(step);
    this.renderAnsatz();
  }

  openFineCell(i: number, j: number): void {
    this.fineCell = { i, j };
    this.renderFine();
  }

  private onClick(event: Event): void {
    const target = event.target as Element | null;
    if (!target || typeof target.closest !== 'function') return;
    const scatterPoint = target.closest('[data-kind="scatter-point"]');
    if (scatterPoint) {
      void this.toggleDatapoint(scatterPoint.getAttribute('data-id') ?? '');
      return;
    }
    const dot = target.closest('[data-kind="datapoint-dot"]');
    if (dot) {
      void this.toggleDatapoint(dot.getAttribute('data-id') ?? '');
      return;
    }
    const tile = target.closest('[data-kind="heatmap-tile"]');
    if (tile) {
      this.openFineCell(Number(tile.getAttribute('data-i')), Number(tile.getAttribute('data-j')));
      return;
    }
    const header = target.closest('[data-kind="step-header"]');
    if (header) {
      this.toggleColumn(Number(header.getAttribute('data-step')));
      return;
    }
    const button = target.closest('[data-statistic]');
    if (button) {
      this.setStatistic(button.getAttribute('data-statistic') as Statistic);
    }
  }

  // ── rendering ──────────────────────────────────────────────────────────

  private mount(panelId: string, scene: Scene): void {
    const host = this.panel(panelId);
    if (!host) return;
    host.innerHTML = '';
    host.appendChild(toSvg(scene, this.doc));
  }

  renderAll(): void {
    this.renderScatter();
    this.renderEncoder();
    this.renderAnsatz();
    this.renderFeature();
    this.renderFine();
    this.renderMetrics();
    this.renderDiagram();
    this.renderEpochLabel();
  }

  private renderEpochLabel(): void {
    const label = this.panel('epoch-label');
    if (label) label.textContent = `epoch ${this.epoch}`;
    const notice = this.panel('snap-notice');
    if (notice) {
      notice.textContent =
        this.requestedEpoch === this.epoch
          ? ''
          : `epoch ${this.requestedEpoch} is not recorded; showing nearest epoch ${this.epoch}`;
    }
  }

  private renderScatter(): void {
    if (!this.detail) return;
    this.mount('scatter-view', buildScatter(this.detail.dataset.points, new Set(this.selection)));
  }

  private renderEncoder(): void {
    if (!this.detail) return;
    const host = this.panel('encoder-view');
    if (!host) return;
    const id = this.selection[this.selection.length - 1];
    const states = id ? this.states.get(`${this.epoch}:${id}`) : undefined;
    if (!id || !states) {
      host.innerHTML = '<p class="hint">click a datapoint in the scatter to inspect its encoding</p>';
      return;
    }
    host.innerHTML = `<p class="hint">encoded state of ${id}</p>`;
    // states[1] is the boundary right after the encoding step.
    host.appendChild(toSvg(renderSatellite(states[1]), this.doc));
  }

  private renderAnsatz(): void {
    if (!this.detail) return;
    const rows: AnsatzRow[] = [];
    for (const id of this.selection) {
      const states = this.states.get(`${this.epoch}:${id}`);
      if (states) rows.push({ id, states });
    }
    this.mount(
      'ansatz-view',
      buildAnsatzMatrix(this.detail.circuit, this.epoch, rows, this.angles, this.unfolded),
    );
  }

  private renderFeature(): void {
    if (!this.detail) return;
    this.mount('feature-view', buildCoarseHeatmap(this.grid, this.detail.dataset.points));
  }

  private renderFine(): void {
    if (!this.detail) return;
    const host = this.panel('fine-view');
    if (!host) return;
    if (!this.fineCell || !this.grid) {
      host.innerHTML = '<p class="hint">click a heatmap tile to expand its measurement</p>';
      return;
    }
    const cell = this.grid.cells.find(
      (c) => c.i === this.fineCell!.i && c.j === this.fineCell!.j,
    );
    if (!cell) {
      host.innerHTML = '<p class="hint">cell not in this epoch</p>';
      return;
    }
    host.innerHTML = '';
    host.appendChild(toSvg(buildFineCell(cell, this.detail.circuit.measured_qubit), this.doc));
  }

  private renderMetrics(): void {
    if (!this.metrics) return;
    this.mount('metrics-view', buildMetricChart(this.metrics, this.statistic, this.epoch));
  }

  private renderDiagram(): void {
    if (!this.detail) return;
    this.mount('circuit-view', buildCircuitDiagram(this.detail.circuit));
  }
}
