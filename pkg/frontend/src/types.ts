/** Wire types for the planning service. The UI never computes ratios or
 * loads itself - every number here originated server-side. */

export interface EntryPayload {
  date: string; // ISO calendar day
  load: number;
}

export interface SeriesPayload {
  athlete_id?: string;
  entries: EntryPayload[];
}

export interface MethodDoc {
  method: string;
  acute_weeks: number;
  chronic_weeks: number;
  acute_days: number;
  chronic_days: number;
  acute_ewma: { lambda: number; n_source: number | null };
  chronic_ewma: { lambda: number; n_source: number | null };
  week_anchor: string;
}

export interface ZoneDoc {
  label: string;
  lower: number;
  upper: number | null; // null = unbounded above
  lower_inclusive: boolean;
  upper_inclusive: boolean;
}

export interface DefaultsResponse {
  method: MethodDoc;
  zones: ZoneDoc[];
  clamp_bounds: [number, number];
  plan: { max_acceptable_ratio: number; chronic_weeks: number };
}

export interface PlanResponse {
  status: 'ok' | 'unbounded' | 'undefined';
  unbounded: boolean;
  max_acute_load: number | null;
  achieved_ratio_check: number | null;
  note: string;
}

export interface RatioPointDoc {
  date: string;
  acute: number;
  chronic: number;
  ratio: number | null; // null = Undefined (zero chronic load)
  defined: boolean;
  method: string;
  converged: boolean;
}

export interface ProjectedPointDoc extends RatioPointDoc {
  zone: string;
}

export interface ProjectResponse {
  method: MethodDoc;
  points: ProjectedPointDoc[];
}

export interface RatioResponse {
  method: MethodDoc;
  points: RatioPointDoc[];
}
