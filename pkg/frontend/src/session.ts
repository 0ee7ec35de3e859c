/** Planner session state: entered history, candidate plan, live projection.
 *
 * All numbers displayed anywhere in the UI come from service responses held
 * here verbatim. The session only assembles requests, sequences refreshes
 * (latest edit wins), and marks results stale when the service fails.
 */

import { ApiClient } from './api';
import type {
  DefaultsResponse,
  EntryPayload,
  PlanResponse,
  ProjectResponse,
  SeriesPayload,
} from './types';

export type HistoryMode = 'weekly' | 'daily';
export type CouplingMode = 'coupled' | 'uncoupled';

export interface SessionState {
  defaults: DefaultsResponse | null;
  historyMode: HistoryMode;
  weeklyTotals: number[];
  dailyLoads: number[];
  method: string;
  coupling: CouplingMode;
  ratioCap: number;
  plan: number[]; // editable per-day loads for the upcoming week
  projection: ProjectResponse | null;
  safeMax: PlanResponse | null;
  stale: boolean;
  error: string | null;
  refreshing: boolean;
}

/** History is laid out backwards from the plan start so the planned week
 * always begins the day after the history ends. */
export const PLAN_START = '2024-01-29'; // a Monday
const DAY_MS = 24 * 60 * 60 * 1000;

function isoDaysBefore(iso: string, days: number): string {
  const t = new Date(`${iso}T00:00:00Z`).getTime() - days * DAY_MS;
  return new Date(t).toISOString().slice(0, 10);
}

function isoDaysAfter(iso: string, days: number): string {
  return isoDaysBefore(iso, -days);
}

/** Weekly entry expands to equal daily loads (noted in the UI). */
export function expandWeeklyTotals(totals: number[]): number[] {
  const daily: number[] = [];
  for (const total of totals) {
    for (let i = 0; i < 7; i += 1) daily.push(total / 7);
  }
  return daily;
}

export function historyEntries(state: SessionState): EntryPayload[] {
  const loads =
    state.historyMode === 'weekly' ? expandWeeklyTotals(state.weeklyTotals) : state.dailyLoads;
  const start = isoDaysBefore(PLAN_START, loads.length);
  return loads.map((load, i) => ({ date: isoDaysAfter(start, i), load }));
}

export function planEntries(state: SessionState): EntryPayload[] {
  return state.plan.map((load, i) => ({ date: isoDaysAfter(PLAN_START, i), load }));
}

export class PlannerSession {
  private state: SessionState;
  private listeners: Array<(state: SessionState) => void> = [];
  private refreshSeq = 0;

  constructor(private readonly api: ApiClient) {
    this.state = {
      defaults: null,
      historyMode: 'weekly',
      weeklyTotals: [10, 10, 10, 10],
      dailyLoads: [],
      method: 'rolling_coupled',
      coupling: 'coupled',
      ratioCap: 1.3,
      plan: new Array<number>(7).fill(10 / 7),
      projection: null,
      safeMax: null,
      stale: false,
      error: null,
      refreshing: false,
    };
  }

  snapshot(): SessionState {
    return { ...this.state, weeklyTotals: [...this.state.weeklyTotals], plan: [...this.state.plan] };
  }

  subscribe(listener: (state: SessionState) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    const snap = this.snapshot();
    for (const listener of this.listeners) listener(snap);
  }

  private patch(partial: Partial<SessionState>): void {
    this.state = { ...this.state, ...partial };
    this.emit();
  }

  async init(): Promise<void> {
    const defaults = await this.api.defaults();
    this.patch({
      defaults,
      ratioCap: defaults.plan.max_acceptable_ratio,
    });
    await this.refresh();
  }

  setHistoryMode(mode: HistoryMode): Promise<void> {
    this.patch({ historyMode: mode });
    return this.refresh();
  }

  setWeeklyTotals(totals: number[]): Promise<void> {
    this.patch({ weeklyTotals: [...totals] });
    return this.refresh();
  }

  setDailyLoads(loads: number[]): Promise<void> {
    this.patch({ dailyLoads: [...loads], historyMode: 'daily' });
    return this.refresh();
  }

  setMethod(method: string): Promise<void> {
    this.patch({ method });
    return this.refresh();
  }

  setCoupling(coupling: CouplingMode): Promise<void> {
    this.patch({ coupling });
    return this.refresh();
  }

  setRatioCap(cap: number): Promise<void> {
    this.patch({ ratioCap: cap });
    return this.refresh();
  }

  setPlanCell(index: number, load: number): Promise<void> {
    if (index < 0 || index >= this.state.plan.length) {
      throw new Error(`no plan cell ${index}`);
    }
    const plan = [...this.state.plan];
    plan[index] = load;
    this.patch({ plan });
    return this.refresh();
  }

  /** Re-fetch projection and safe-max. In-flight results from older edits
   * are discarded when a newer refresh has started (latest write wins). */
  async refresh(): Promise<void> {
    const seq = ++this.refreshSeq;
    this.patch({ refreshing: true });
    const history: SeriesPayload = { entries: historyEntries(this.state) };
    const planned: SeriesPayload = { entries: planEntries(this.state) };
    const methodPatch = { method: this.state.method };
    const planBody = {
      prior_weekly_totals: this.priorWeeklyTotals(),
      max_acceptable_ratio: this.state.ratioCap,
      coupling: this.state.coupling,
    };
    try {
      const [projection, safeMax] = await Promise.all([
        this.api.project(history, planned, methodPatch),
        this.api.plan(planBody),
      ]);
      if (seq !== this.refreshSeq) return; // superseded by a newer edit
      this.patch({ projection, safeMax, stale: false, error: null, refreshing: false });
    } catch (err) {
      if (seq !== this.refreshSeq) return;
      // keep the previous results on screen, visibly stale
      this.patch({
        stale: this.state.projection !== null || this.state.safeMax !== null,
        error: err instanceof Error ? err.message : String(err),
        refreshing: false,
      });
    }
  }

  /** Weekly totals for the plan endpoint: as entered, or summed from the
   * daily history (a grouping of server-supplied inputs, not a ratio). */
  private priorWeeklyTotals(): number[] {
    if (this.state.historyMode === 'weekly') {
      const w = this.state.coupling === 'coupled' ? 3 : 4;
      return this.state.weeklyTotals.slice(-w);
    }
    const totals: number[] = [];
    const loads = this.state.dailyLoads;
    for (let start = loads.length % 7; start + 7 <= loads.length; start += 7) {
      let sum = 0;
      for (let i = start; i < start + 7; i += 1) sum += loads[i] ?? 0;
      totals.push(sum);
    }
    const w = this.state.coupling === 'coupled' ? 3 : 4;
    return totals.slice(-w);
  }

  /** Side-by-side projections of the same plan under each method. */
  async compareMethods(methods: string[]): Promise<Map<string, ProjectResponse>> {
    const history: SeriesPayload = { entries: historyEntries(this.state) };
    const planned: SeriesPayload = { entries: planEntries(this.state) };
    const responses = await Promise.all(
      methods.map((method) => this.api.project(history, planned, { method })),
    );
    const out = new Map<string, ProjectResponse>();
    methods.forEach((method, i) => {
      const response = responses[i];
      if (response) out.set(method, response);
    });
    return out;
  }
}
