/** What-if variants with covered/uncovered chips, and the audit findings. */

import { AuditPayload, WhatIfVariant } from "../api.js";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderWhatIf(ose: string, variants: WhatIfVariant[]): string {
  const chips = variants
    .map(
      (v) => `<li class="chip ${v.covered ? "covered" : "uncovered"}"
        data-field="${esc(v.field)}" data-value="${esc(v.value)}">
        ${esc(v.field)} → ${esc(v.value)} ${v.covered ? "✓ covered" : "✗ uncovered"}
      </li>`,
    )
    .join("");
  return `<section class="whatif">
    <h2>single-field variants of ${esc(ose)}</h2>
    <ul class="variants">${chips || "<li>no variants</li>"}</ul>
  </section>`;
}

export function renderAudit(audit: AuditPayload): string {
  if (audit.clean) {
    return `<section class="audit clean"><p data-role="no-findings">no findings</p></section>`;
  }
  const group = (title: string, rows: { oses: string[]; detail: string }[]) =>
    rows.length
      ? `<h3>${title}</h3><ul>${rows
          .map((r) => `<li data-kind="${title}">${r.oses.map(esc).join(" / ")}: ${esc(r.detail)}</li>`)
          .join("")}</ul>`
      : "";
  return `<section class="audit">
    ${group("shadowing", audit.shadowing)}
    ${group("unsatisfiable", audit.unsatisfiable)}
    ${group("duplicates", audit.duplicates)}
  </section>`;
}
