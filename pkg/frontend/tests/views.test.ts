import { describe, expect, it } from "vitest";

import type {
  AuditPayload,
  Candidate,
  CandidatesPayload,
  PlanDocument,
  SessionSummary,
} from "../src/api.js";
import { renderCandidateCard, renderCandidatePanel } from "../src/views/candidates.js";
import { renderSetupBoard } from "../src/views/setupBoard.js";
import { renderSynthesis } from "../src/views/synthesis.js";
import { renderAudit, renderWhatIf } from "../src/views/whatif.js";

function candidate(overrides: Partial<Candidate> = {}): Candidate {
  return {
    key: "ose-a:T1",
    ose: "ose-a",
    cutting_set: "T1",
    config: "cfg",
    rank: 1,
    selected: false,
    origin: "Default",
    chosen_tmc: "TMC-1",
    feed_rate_bound: 1600,
    warnings: [],
    custom: null,
    trace: [{ check: "tool.diameter lt face.end_accessibility", outcome: "pass" }],
    ...overrides,
  };
}

describe("candidate panel", () => {
  it("highlights the rank-1 default and marks the selection", () => {
    const html = renderCandidateCard(candidate({ selected: true }));
    expect(html).toContain("default-choice");
    expect(html).toContain("selected");
    expect(html).toContain('data-rank="1"');
  });

  it("keeps candidates ordered by rank and lists every alternative", () => {
    const payload: CandidatesPayload = {
      id: "s1",
      version: 0,
      face: "side-w",
      candidates: [
        candidate({ key: "b:T2", rank: 2 }),
        candidate({ key: "a:T1", rank: 1, selected: true }),
        candidate({ key: "c:T3", rank: 3 }),
      ],
    };
    const html = renderCandidatePanel(payload);
    const order = [...html.matchAll(/data-rank="(\d+)"/g)].map((m) => m[1]);
    expect(order).toEqual(["1", "2", "3"]);
    expect(html).toContain('data-key="a:T1"');
    expect(html).toContain('data-key="b:T2"');
    expect(html).toContain('data-key="c:T3"');
  });

  it("renders the warning flag on out-of-range custom choices", () => {
    const html = renderCandidateCard(candidate({
      origin: "ExpertCustom",
      warnings: ["feed_rate=9999.0 outside tool range [100.0, 1600.0]"],
    }));
    expect(html).toContain('data-role="warning"');
    expect(html).toContain("feed_rate=9999.0");
  });

  it("always shows the check trace entries", () => {
    const html = renderCandidateCard(candidate());
    expect(html).toContain("[pass] tool.diameter lt face.end_accessibility");
  });
});

describe("synthesis view", () => {
  const summary: SessionSummary = {
    id: "s1",
    version: 0,
    part: "housing-24",
    database_version: "abc123",
    synthesis: {
      rows: [
        { type: "Plan", count: 16, percentage: 66.67 },
        { type: "Cylinder", count: 2, percentage: 8.33 },
      ],
      total: 24,
      total_percentage: 100.0,
    },
    faces: 24,
    unmatched: [],
    inaccessible: ["bore-bottom", "other"],
    events: 0,
  };

  it("shows counts, percentages and the exceptions badge", () => {
    const html = renderSynthesis(summary, null);
    expect(html).toContain("Plan");
    expect(html).toContain("66.67 %");
    expect(html).toContain("exceptions: 2");
  });

  it("shows a clean audit badge when the database is clean", () => {
    const audit: AuditPayload = {
      session: "s1", shadowing: [], unsatisfiable: [], duplicates: [], clean: true,
    };
    expect(renderSynthesis(summary, audit)).toContain("audit: clean");
  });
});

describe("setup board", () => {
  const doc: PlanDocument = {
    part: "p",
    database_version: "v",
    synthesis: null,
    setups: [
      { id: "setup-1", direction: [0, 0, 1], faces: ["a", "b"] },
      { id: "setup-2", direction: [0, 0, -1], faces: ["c"] },
    ],
    sequences: [
      {
        id: "seq-1-1", setup: "setup-1", faces: ["a", "b"], ose: "ose-x",
        cutting_set: "T1", mode: "Roughing", tmc: "TMC-1", origin: "Default",
        conditions: { values: { feed_rate: 1600 }, warnings: [] }, trace: [],
      },
    ],
    exceptions: { unmatched: [], inaccessible: [] },
    tensions: ["b"],
  };

  it("renders one column per setup with direction labels", () => {
    const html = renderSetupBoard(doc);
    expect((html.match(/setup-column/g) ?? []).length).toBe(2);
    expect(html).toContain("+Z");
    expect(html).toContain("-Z");
  });

  it("renders sequence cards with faces and marks tension", () => {
    const html = renderSetupBoard(doc);
    expect(html).toContain('data-sequence="seq-1-1"');
    expect(html).toContain("feed_rate=1600");
    expect(html).toContain('data-role="tension"');
  });

  it("shows an empty-state prompt without setups", () => {
    const empty = { ...doc, setups: [], sequences: [], tensions: [] };
    expect(renderSetupBoard(empty)).toContain('data-role="empty-state"');
  });
});

describe("what-if and audit views", () => {
  it("renders covered and uncovered chips", () => {
    const html = renderWhatIf("ose-x", [
      { field: "mode", value: "SemiFinishing", descriptor: {}, covered: true },
      { field: "mode", value: "Finishing", descriptor: {}, covered: false },
    ]);
    expect(html).toContain("✓ covered");
    expect(html).toContain("✗ uncovered");
    expect(html).toContain('data-value="Finishing"');
  });

  it("lists findings with the involved OSE ids", () => {
    const audit: AuditPayload = {
      session: "s1",
      shadowing: [{ oses: ["ose-a", "ose-b"], detail: "identical acceptance" }],
      unsatisfiable: [],
      duplicates: [],
      clean: false,
    };
    const html = renderAudit(audit);
    expect(html).toContain("ose-a / ose-b");
  });

  it("says no findings when clean", () => {
    const audit: AuditPayload = {
      session: "s1", shadowing: [], unsatisfiable: [], duplicates: [], clean: true,
    };
    expect(renderAudit(audit)).toContain('data-role="no-findings"');
  });
});
