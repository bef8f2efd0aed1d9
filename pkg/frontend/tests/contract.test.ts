/**
 * Contract tests against a live session service.
 *
 * Spawns the Python service on a free port with the shipped fixtures and
 * drives it exactly as the UI does: rank-1 default highlighted, level-2
 * selection persisting across a reload with alternatives intact, level-3
 * out-of-range custom config flagged, setup board reflecting a rebuild, and
 * every cached view state matching a fresh GET.
 */

import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { SessionViewState } from "../src/state.js";
import { renderCandidatePanel } from "../src/views/candidates.js";
import { renderSetupBoard } from "../src/views/setupBoard.js";

const FIXTURES = resolve(__dirname, "..", "..", "fixtures");
const PORT = 8917;
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;

function loadFixture(name: string): unknown {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8"));
}

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt += 1) {
    try {
      const response = await fetch(`${BASE}/sessions`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  const store = mkdtempSync(join(tmpdir(), "oseplan-ui-"));
  service = spawn(
    "python3",
    ["-m", "oseplan.cli", "serve", "--port", String(PORT), "--store", store],
    { stdio: "ignore" },
  );
  await waitForService();
  const api = new ApiClient(BASE);
  await api.createSession({
    id: "ui-fixture",
    part: loadFixture("housing_24.json"),
    osedb: loadFixture("osedb_seed.json"),
    tools: loadFixture("tools_seed.json"),
  });
}, 120_000);

afterAll(() => {
  service?.kill();
});

describe("preparation UI contract against the live service", () => {
  it("shows the rank-1 default highlighted in the candidate panel", async () => {
    const state = new SessionViewState(new ApiClient(BASE), "ui-fixture");
    await state.refresh();
    await state.openFace("side-w");
    const html = renderCandidatePanel(state.candidates!);
    const selectedCard = html.match(
      /<article class="candidate selected default-choice"[^>]*data-rank="1"/,
    );
    expect(selectedCard).not.toBeNull();
  });

  it("persists a level-2 selection across reload, alternatives intact", async () => {
    const api = new ApiClient(BASE);
    const state = new SessionViewState(api, "ui-fixture");
    await state.refresh();
    await state.openFace("side-w");
    const total = state.candidates!.candidates.length;
    const third = state.candidates!.candidates.find((c) => c.rank === 3)!;
    await state.selectAlternative("side-w", third.key);

    // Simulated page reload: brand-new client and state.
    const fresh = new SessionViewState(new ApiClient(BASE), "ui-fixture");
    await fresh.refresh();
    await fresh.openFace("side-w");
    const reloaded = fresh.candidates!;
    expect(reloaded.candidates.length).toBe(total);
    const selected = reloaded.candidates.filter((c) => c.selected);
    expect(selected).toHaveLength(1);
    expect(selected[0].key).toBe(third.key);
    expect(selected[0].origin).toBe("ExpertChoice");
    const html = renderCandidatePanel(reloaded);
    expect(html).toContain("selected-chip");
  });

  it("flags an out-of-range level-3 custom configuration", async () => {
    const state = new SessionViewState(new ApiClient(BASE), "ui-fixture");
    await state.refresh();
    await state.openFace("side-e");
    const payload = await state.selectCustom("side-e", {
      tool: "EM6",
      mfg_type: "EndManufacturing",
      mode: "Roughing",
      tmc: "TMC-ALU-CARB",
      conditions: { feed_rate: 9999 },
    });
    const custom = payload.candidates.find((c) => c.origin === "ExpertCustom")!;
    expect(custom.selected).toBe(true);
    expect(custom.warnings.some((w) => w.includes("feed_rate"))).toBe(true);
    const html = renderCandidatePanel(payload);
    expect(html).toContain('data-role="warning"');
  });

  it("reflects a rebuild on the setup board after a selection change", async () => {
    const api = new ApiClient(BASE);
    const state = new SessionViewState(api, "ui-fixture");
    await state.refresh();
    await state.flushAndRebuild();
    const before = renderSetupBoard(state.plan!.document);
    expect(before).toContain("setup-column");

    await state.openFace("side-n");
    const em8 = state.candidates!.candidates.find(
      (c) => c.cutting_set === "EM8" && c.ose === "ose-plan-rough-small",
    )!;
    await state.selectAlternative("side-n", em8.key);
    await state.switchView("SetupBoard"); // flushes the pending mutation
    const after = renderSetupBoard(state.plan!.document);
    const sequence = state.plan!.document.sequences.find((s) =>
      s.faces.includes("side-n"),
    )!;
    expect(sequence.cutting_set).toBe("EM8");
    expect(after).toContain("EM8");
  });

  it("round-trips every cached view state against fresh GETs", async () => {
    const api = new ApiClient(BASE);
    const state = new SessionViewState(api, "ui-fixture");
    await state.refresh();
    await state.openFace("top-s");
    await state.flushAndRebuild();

    const freshApi = new ApiClient(BASE);
    const summary = await freshApi.getSession("ui-fixture");
    const candidates = await freshApi.getCandidates("ui-fixture", "top-s");
    const plan = await freshApi.getPlan("ui-fixture");
    expect(state.summary).toEqual(summary);
    expect(state.candidates).toEqual(candidates);
    expect(state.plan).toEqual(plan);
  });

  it("talks to the service only through the documented endpoints", async () => {
    const api = new ApiClient(BASE);
    const state = new SessionViewState(api, "ui-fixture");
    await state.refresh();
    await state.openFace("side-s");
    await state.selectDefault("side-s");
    await state.flushAndRebuild();
    await api.whatIf("ui-fixture", "ose-plan-rough-small", ["mode"]);
    await api.audit("ui-fixture");

    const documented = [
      /^\/sessions$/,
      /^\/sessions\/[^/]+$/,
      /^\/sessions\/[^/]+\/faces$/,
      /^\/sessions\/[^/]+\/faces\/[^/]+\/candidates$/,
      /^\/sessions\/[^/]+\/faces\/[^/]+\/selection$/,
      /^\/sessions\/[^/]+\/rebuild$/,
      /^\/sessions\/[^/]+\/plan$/,
      /^\/sessions\/[^/]+\/whatif$/,
      /^\/db\/audit\?session=[^/]+$/,
    ];
    for (const entry of api.requestLog) {
      expect(
        documented.some((pattern) => pattern.test(entry.path)),
        `undocumented endpoint used: ${entry.method} ${entry.path}`,
      ).toBe(true);
    }
    const mutations = api.requestLog.filter((e) => e.method !== "GET");
    for (const entry of mutations) {
      expect(entry.path).toMatch(/\/(selection|rebuild|whatif|sessions)$/);
    }
  });
});
