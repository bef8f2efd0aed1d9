/** Overview: geometry-type synthesis table, exceptions, audit badge. */

import { AuditPayload, SessionSummary } from "../api.js";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderSynthesis(
  summary: SessionSummary,
  audit: AuditPayload | null,
): string {
  const rows = summary.synthesis.rows
    .map(
      (row) => `<tr>
        <td>${esc(row.type)}</td>
        <td class="num">${row.count}</td>
        <td class="num">${row.percentage.toFixed(2)} %</td>
      </tr>`,
    )
    .join("");
  const exceptions = summary.unmatched.length + summary.inaccessible.length;
  const auditBadge =
    audit === null
      ? `<span class="badge pending">audit: ?</span>`
      : audit.clean
        ? `<span class="badge ok">audit: clean</span>`
        : `<span class="badge warn">audit: ${
            audit.shadowing.length + audit.unsatisfiable.length + audit.duplicates.length
          } findings</span>`;
  return `<section class="synthesis">
    <h2>${esc(summary.part)} <small>db ${esc(summary.database_version)}</small></h2>
    ${auditBadge}
    <span class="badge ${exceptions ? "warn" : "ok"}" data-role="exceptions">
      exceptions: ${exceptions}
    </span>
    <table>
      <thead><tr><th>geometry</th><th>faces</th><th>share</th></tr></thead>
      <tbody>${rows}</tbody>
      <tfoot><tr><td>TOTAL</td><td class="num">${summary.synthesis.total}</td>
        <td class="num">${summary.synthesis.total_percentage.toFixed(2)} %</td></tr></tfoot>
    </table>
    <div class="exceptions">
      <h3>no capable process</h3>
      <ul>${summary.unmatched.map((f) => `<li>${esc(f)}</li>`).join("") || "<li>none</li>"}</ul>
      <h3>inaccessible</h3>
      <ul>${summary.inaccessible.map((f) => `<li>${esc(f)}</li>`).join("") || "<li>none</li>"}</ul>
    </div>
  </section>`;
}
