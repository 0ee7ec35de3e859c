/** Thin fetch client for the planning service. */

import type {
  DefaultsResponse,
  PlanResponse,
  ProjectResponse,
  RatioResponse,
  SeriesPayload,
} from './types';

export class ServiceError extends Error {
  constructor(
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface PlanRequestBody {
  prior_weekly_totals: number[];
  max_acceptable_ratio: number;
  coupling: 'coupled' | 'uncoupled';
  chronic_weeks?: number;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      const text = await response.text();
      throw new ServiceError(`${path} failed (${response.status}): ${text}`, response.status);
    }
    return (await response.json()) as T;
  }

  async defaults(): Promise<DefaultsResponse> {
    const response = await this.fetchImpl(this.baseUrl + '/api/defaults');
    if (!response.ok) {
      throw new ServiceError(`/api/defaults failed (${response.status})`, response.status);
    }
    return (await response.json()) as DefaultsResponse;
  }

  plan(body: PlanRequestBody): Promise<PlanResponse> {
    return this.post('/api/plan', body);
  }

  project(history: SeriesPayload, planned: SeriesPayload, method: object = {}): Promise<ProjectResponse> {
    return this.post('/api/project', { history, planned, method });
  }

  ratio(series: SeriesPayload, method: object = {}): Promise<RatioResponse> {
    return this.post('/api/ratio', { series, method });
  }
}
