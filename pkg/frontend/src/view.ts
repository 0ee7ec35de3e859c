/** View models: format service payloads for display.
 *
 * Nothing here computes a load or a ratio - functions reshape and format
 * numbers the service already produced.
 */

import type { PlanResponse, ProjectedPointDoc, RatioPointDoc } from './types';

/** "14.4", "13" - one decimal, trailing .0 trimmed, as in the write-ups. */
export function formatLoad(value: number): string {
  const fixed = value.toFixed(1);
  return fixed.endsWith('.0') ? fixed.slice(0, -2) : fixed;
}

export function formatRatio(value: number | null): string {
  return value === null ? 'undefined' : value.toFixed(3);
}

export interface SafeMaxView {
  text: string;
  detail: string;
}

export function safeMaxView(plan: PlanResponse | null): SafeMaxView {
  if (plan === null) {
    return { text: '—', detail: 'no result yet' };
  }
  if (plan.status === 'unbounded') {
    return { text: 'unbounded', detail: plan.note };
  }
  if (plan.status === 'undefined' || plan.max_acute_load === null) {
    return { text: 'undefined', detail: plan.note };
  }
  return {
    text: formatLoad(plan.max_acute_load),
    detail: `exact ${plan.max_acute_load}`,
  };
}

export interface ZoneCell {
  date: string;
  zone: string;
  defined: boolean;
  converged: boolean;
}

export function zoneStrip(points: ProjectedPointDoc[]): ZoneCell[] {
  return points.map((p) => ({
    date: p.date,
    zone: p.defined ? p.zone : 'Unclassified',
    defined: p.defined,
    converged: p.converged,
  }));
}

export interface ProjectionRow {
  date: string;
  acute: number;
  chronic: number;
  ratio: number | null;
  ratioText: string;
  zone: string;
  converged: boolean;
}

export function projectionRows(points: ProjectedPointDoc[]): ProjectionRow[] {
  return points.map((p) => ({
    date: p.date,
    acute: p.acute,
    chronic: p.chronic,
    ratio: p.ratio,
    ratioText: formatRatio(p.ratio),
    zone: p.zone,
    converged: p.converged,
  }));
}

/** CSV export matching the CLI column contract (9-decimal floats,
 * `undefined` for undefined ratios). */
export function exportCsv(points: RatioPointDoc[], athleteId = 'athlete'): string {
  const header = 'athlete_id,date,method,acute,chronic,ratio,converged';
  const lines = points.map((p) =>
    [
      athleteId,
      p.date,
      p.method,
      p.acute.toFixed(9),
      p.chronic.toFixed(9),
      p.ratio === null ? 'undefined' : p.ratio.toFixed(9),
      p.converged ? 'true' : 'false',
    ].join(','),
  );
  return [header, ...lines].join('\n') + '\n';
}
