/**
 * Candidate panel: the ranked alternatives of one face with full check
 * traces. The rank-1 default is highlighted; choosing another alternative is
 * a level-2 selection, the custom form is level 3. Out-of-range custom
 * values render the warning flag the service returned.
 */

import { Candidate, CandidatesPayload } from "../api.js";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function renderTrace(candidate: Candidate): string {
  return `<details>
    <summary>check trace (${candidate.trace.length})</summary>
    <ul class="trace">${candidate.trace
      .map((t) => `<li class="${t.outcome}">[${t.outcome}] ${esc(t.check)}</li>`)
      .join("")}</ul>
  </details>`;
}

export function renderCandidateCard(candidate: Candidate): string {
  const classes = ["candidate"];
  if (candidate.selected) classes.push("selected");
  if (candidate.rank === 1 && candidate.origin !== "ExpertCustom") {
    classes.push("default-choice");
  }
  if (candidate.origin === "ExpertCustom") classes.push("custom");
  const warningChips = candidate.warnings
    .map((w) => `<span class="chip warning" data-role="warning">${esc(w)}</span>`)
    .join("");
  return `<article class="${classes.join(" ")}" data-key="${esc(candidate.key)}"
      data-rank="${candidate.rank}">
    <header>
      <span class="rank">#${candidate.rank}</span>
      <strong>${esc(candidate.ose)}</strong> / ${esc(candidate.cutting_set)}
      <span class="origin">${esc(candidate.origin)}</span>
      ${candidate.selected ? '<span class="chip selected-chip">selected</span>' : ""}
    </header>
    <div>tmc ${esc(candidate.chosen_tmc ?? "-")} | feed bound ${candidate.feed_rate_bound}</div>
    ${warningChips}
    ${renderTrace(candidate)}
    <button data-action="choose" data-key="${esc(candidate.key)}">select</button>
  </article>`;
}

export function renderCandidatePanel(payload: CandidatesPayload): string {
  const ordered = [...payload.candidates].sort((a, b) => a.rank - b.rank);
  const cards = ordered.map(renderCandidateCard).join("");
  return `<section class="candidate-panel" data-face="${esc(payload.face)}">
    <h2>${esc(payload.face)}</h2>
    ${cards || "<p>no capable process for this face</p>"}
    <form class="custom-config" data-action="custom">
      <h3>expert configuration</h3>
      <input name="tool" placeholder="tool id" required>
      <input name="mfg_type" placeholder="manufacturing type" required>
      <input name="mode" placeholder="mode" required>
      <input name="tmc" placeholder="TMC id" required>
      <input name="feed_rate" placeholder="feed rate" type="number" step="any">
      <button type="submit">install custom choice</button>
    </form>
  </section>`;
}
