/**
 * View state of one planner session per browser tab.
 *
 * The engine is the single source of truth: this store only caches the last
 * payload of each endpoint and never recomputes matching or planning on the
 * client. Pending mutations are flushed before any view switch that needs a
 * rebuilt plan, and a version conflict drops the cache so the next render
 * re-reads the service.
 */

import {
  ApiClient,
  CandidatesPayload,
  CustomConfig,
  FaceRecord,
  PlanPayload,
  SessionSummary,
  VersionConflict,
} from "./api.js";

export type ViewName = "Synthesis" | "FaceInspector" | "SetupBoard" | "WhatIf" | "Audit";

export class SessionViewState {
  activeView: ViewName = "Synthesis";
  selectedFace: string | null = null;
  pendingMutations = 0;

  summary: SessionSummary | null = null;
  faces: FaceRecord[] = [];
  candidates: CandidatesPayload | null = null;
  plan: PlanPayload | null = null;

  constructor(readonly api: ApiClient, readonly sessionId: string) {}

  get version(): number {
    return this.summary ? this.summary.version : 0;
  }

  async refresh(): Promise<void> {
    this.summary = await this.api.getSession(this.sessionId);
    this.faces = (await this.api.getFaces(this.sessionId)).faces;
    if (this.selectedFace) {
      this.candidates = await this.api.getCandidates(this.sessionId, this.selectedFace);
    }
  }

  async openFace(face: string): Promise<void> {
    this.selectedFace = face;
    this.candidates = await this.api.getCandidates(this.sessionId, face);
  }

  private async mutate<T extends { version: number }>(
    op: () => Promise<T>,
  ): Promise<T> {
    try {
      const result = await op();
      this.pendingMutations += 1;
      if (this.summary) {
        this.summary.version = result.version;
      }
      return result;
    } catch (error) {
      if (error instanceof VersionConflict) {
        await this.refresh(); // reload and let the planner retry
      }
      throw error;
    }
  }

  async selectDefault(face: string): Promise<void> {
    this.candidates = await this.mutate(() =>
      this.api.selectLevel1(this.sessionId, face, this.version));
  }

  async selectAlternative(face: string, key: string): Promise<void> {
    this.candidates = await this.mutate(() =>
      this.api.selectLevel2(this.sessionId, face, this.version, key));
  }

  async selectCustom(face: string, custom: CustomConfig): Promise<CandidatesPayload> {
    this.candidates = await this.mutate(() =>
      this.api.selectLevel3(this.sessionId, face, this.version, custom));
    return this.candidates;
  }

  /** Flush pending mutations into a rebuilt plan; required before opening
   *  the setup board after selections changed. */
  async flushAndRebuild(): Promise<void> {
    if (this.pendingMutations > 0) {
      this.summary = await this.mutate(() =>
        this.api.rebuild(this.sessionId, this.version));
      this.pendingMutations = 0;
    }
    this.plan = await this.api.getPlan(this.sessionId);
  }

  async switchView(view: ViewName): Promise<void> {
    if (view === "SetupBoard") {
      await this.flushAndRebuild();
    }
    this.activeView = view;
  }
}
