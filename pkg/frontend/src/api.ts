/**
 * Typed client for the session service.
 *
 * Every mutation echoes the session version; a 409 means another writer got
 * there first and the caller must reload. All traffic goes through request()
 * so tests can assert that only the documented endpoints are ever used.
 */

export interface SynthesisRow {
  type: string;
  count: number;
  percentage: number;
}

export interface Synthesis {
  rows: SynthesisRow[];
  total: number;
  total_percentage: number;
}

export interface SessionSummary {
  id: string;
  version: number;
  part: string;
  database_version: string;
  synthesis: Synthesis;
  faces: number;
  unmatched: string[];
  inaccessible: string[];
  events: number;
}

export interface TraceEntry {
  check: string;
  outcome: "pass" | "fail";
}

export interface Candidate {
  key: string;
  ose: string;
  cutting_set: string;
  config: string;
  rank: number;
  selected: boolean;
  origin: "Default" | "ExpertChoice" | "ExpertCustom";
  chosen_tmc: string | null;
  feed_rate_bound: number;
  warnings: string[];
  custom: Record<string, unknown> | null;
  trace: TraceEntry[];
}

export interface CandidatesPayload {
  id: string;
  version: number;
  face: string;
  candidates: Candidate[];
  warnings?: string[];
}

export interface FaceRecord {
  face: string;
  geometry_type: string;
  openness: string;
  access: { direction: number[]; kind: string; compulsory: boolean }[];
  end_accessibility: number;
  flank_accessibility: number;
  global_accessibility: number;
  min_fillet_radius: number | "Unbounded";
  potential_mfg_types: string[];
  inaccessible: boolean;
}

export interface PlanSetup {
  id: string;
  direction: number[];
  faces: string[];
}

export interface PlanSequence {
  id: string;
  setup: string;
  faces: string[];
  ose: string;
  cutting_set: string;
  mode: string | null;
  tmc: string | null;
  origin: string;
  conditions: {
    values: Record<string, number>;
    warnings: string[];
  } | null;
  trace: TraceEntry[];
}

export interface PlanDocument {
  part: string;
  database_version: string | null;
  synthesis: Synthesis | null;
  setups: PlanSetup[];
  sequences: PlanSequence[];
  exceptions: { unmatched: string[]; inaccessible: string[] };
  tensions: string[];
}

export interface PlanPayload {
  id: string;
  version: number;
  document: PlanDocument;
  text: string;
}

export interface WhatIfVariant {
  field: string;
  value: string;
  descriptor: Record<string, string>;
  covered: boolean;
}

export interface AuditPayload {
  session: string;
  shadowing: { oses: string[]; detail: string }[];
  unsatisfiable: { oses: string[]; detail: string }[];
  duplicates: { oses: string[]; detail: string }[];
  clean: boolean;
}

export interface CustomConfig {
  tool: string;
  mfg_type: string;
  mode: string;
  tmc: string;
  trajectory_strategy?: string;
  conditions?: Record<string, number>;
}

export class VersionConflict extends Error {}

export class ApiClient {
  readonly requestLog: { method: string; path: string }[] = [];

  constructor(private readonly base: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    this.requestLog.push({ method, path });
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status === 409) {
      throw new VersionConflict(await response.text());
    }
    if (!response.ok) {
      throw new Error(`${method} ${path}: ${response.status} ${await response.text()}`);
    }
    return (await response.json()) as T;
  }

  createSession(inputs: { id?: string; part: unknown; osedb: unknown; tools: unknown }) {
    return this.request<SessionSummary>("POST", "/sessions", inputs);
  }

  getSession(id: string) {
    return this.request<SessionSummary>("GET", `/sessions/${id}`);
  }

  getFaces(id: string) {
    return this.request<{ id: string; version: number; faces: FaceRecord[] }>(
      "GET", `/sessions/${id}/faces`);
  }

  getCandidates(id: string, face: string) {
    return this.request<CandidatesPayload>(
      "GET", `/sessions/${id}/faces/${face}/candidates`);
  }

  selectLevel1(id: string, face: string, version: number) {
    return this.request<CandidatesPayload>(
      "PUT", `/sessions/${id}/faces/${face}/selection`,
      { version, level: 1 });
  }

  selectLevel2(id: string, face: string, version: number, candidate: string) {
    return this.request<CandidatesPayload>(
      "PUT", `/sessions/${id}/faces/${face}/selection`,
      { version, level: 2, candidate });
  }

  selectLevel3(id: string, face: string, version: number, custom: CustomConfig) {
    return this.request<CandidatesPayload>(
      "PUT", `/sessions/${id}/faces/${face}/selection`,
      { version, level: 3, custom });
  }

  rebuild(id: string, version: number) {
    return this.request<SessionSummary>(
      "POST", `/sessions/${id}/rebuild`, { version });
  }

  getPlan(id: string) {
    return this.request<PlanPayload>("GET", `/sessions/${id}/plan`);
  }

  whatIf(id: string, ose: string, vary: string[]) {
    return this.request<{ ose: string; variants: WhatIfVariant[] }>(
      "POST", `/sessions/${id}/whatif`, { ose, vary });
  }

  audit(id: string) {
    return this.request<AuditPayload>("GET", `/db/audit?session=${id}`);
  }
}
