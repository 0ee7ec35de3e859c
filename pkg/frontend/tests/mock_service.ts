/** Fetch stub that replays recorded service payloads.
 *
 * Routing is intentionally simple: the plan endpoint switches on the
 * coupling mode, the project endpoint returns the spike recording when any
 * planned day exceeds 20 (the scenario it was recorded with).
 */

import defaults from './fixtures/defaults.json';
import planCoupled from './fixtures/plan_coupled_13cap.json';
import planUncoupled from './fixtures/plan_uncoupled_13cap.json';
import projectFlat from './fixtures/project_flat.json';
import projectSpike from './fixtures/project_spike.json';
import ratioConstant from './fixtures/ratio_constant.json';

import type { FetchLike } from '../src/api';

export const fixtures = {
  defaults,
  planCoupled,
  planUncoupled,
  projectFlat,
  projectSpike,
  ratioConstant,
};

function json(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

export interface MockOptions {
  failProject?: boolean;
  /** Called before each response resolves; lets tests sequence replies. */
  gate?: (path: string, body: unknown) => Promise<void>;
}

export function mockFetch(options: MockOptions = {}): FetchLike & { calls: string[] } {
  const calls: string[] = [];
  const impl = (async (input: string, init?: RequestInit) => {
    const path = input.replace(/^https?:\/\/[^/]+/, '');
    calls.push(path);
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    if (options.gate) await options.gate(path, body);

    if (path === '/api/defaults') return json(defaults);
    if (path === '/api/plan') {
      return json(body.coupling === 'uncoupled' ? planUncoupled : planCoupled);
    }
    if (path === '/api/project') {
      if (options.failProject) {
        return json({ error: { message: 'recorded failure' } }, 400);
      }
      const loads: number[] = body.planned.entries.map((e: { load: number }) => e.load);
      return json(loads.some((l) => l > 20) ? projectSpike : projectFlat);
    }
    if (path === '/api/ratio') return json(ratioConstant);
    return json({ error: { message: `unrouted ${path}` } }, 404);
  }) as FetchLike & { calls: string[] };
  impl.calls = calls;
  return impl;
}
