/**
 * Setup board: one column per setup (direction label), sequence cards
 * listing faces and resolved conditions. Faces with direction/candidate
 * tension get a distinct marker.
 */

import { PlanDocument } from "../api.js";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function directionLabel(direction: number[]): string {
  const names: [string, number[]][] = [
    ["+X", [1, 0, 0]], ["-X", [-1, 0, 0]],
    ["+Y", [0, 1, 0]], ["-Y", [0, -1, 0]],
    ["+Z", [0, 0, 1]], ["-Z", [0, 0, -1]],
  ];
  for (const [name, axis] of names) {
    const gap = direction.reduce((s, c, i) => s + (c - axis[i]) ** 2, 0);
    if (gap < 1e-9) return name;
  }
  return `(${direction.map((c) => c.toFixed(3)).join(", ")})`;
}

export function renderSetupBoard(doc: PlanDocument): string {
  if (!doc.setups.length) {
    return `<section class="setup-board empty">
      <p data-role="empty-state">No setups yet: run matching and rebuild the plan.</p>
    </section>`;
  }
  const tension = new Set(doc.tensions);
  const columns = doc.setups
    .map((setup) => {
      const cards = doc.sequences
        .filter((seq) => seq.setup === setup.id)
        .map((seq) => {
          const conditions = seq.conditions
            ? Object.entries(seq.conditions.values)
                .map(([k, v]) => `${k}=${v}`)
                .join(", ")
            : "unresolved";
          const faces = seq.faces
            .map((f) =>
              tension.has(f)
                ? `<li class="tension" data-role="tension">${esc(f)} ⚠</li>`
                : `<li>${esc(f)}</li>`,
            )
            .join("");
          return `<article class="sequence-card" data-sequence="${esc(seq.id)}">
            <header>${esc(seq.id)} · ${esc(seq.mode ?? "-")}</header>
            <div>${esc(seq.ose)} / ${esc(seq.cutting_set)}</div>
            <ul class="faces">${faces}</ul>
            <footer>${esc(conditions)}</footer>
          </article>`;
        })
        .join("");
      return `<div class="setup-column" data-setup="${esc(setup.id)}">
        <h3>${esc(setup.id)} <span class="direction">${directionLabel(setup.direction)}</span></h3>
        <div class="count">${setup.faces.length} faces</div>
        ${cards}
      </div>`;
    })
    .join("");
  return `<section class="setup-board">${columns}</section>`;
}
