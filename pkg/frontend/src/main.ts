/**
 * Bootstrap: wires the view renderers onto the page and routes planner
 * actions to the session service. One session per tab; a version conflict
 * reloads current state and shows a retry banner.
 */

import { ApiClient, CustomConfig, VersionConflict } from "./api.js";
import { SessionViewState, ViewName } from "./state.js";
import { renderCandidatePanel } from "./views/candidates.js";
import { renderSetupBoard } from "./views/setupBoard.js";
import { renderSynthesis } from "./views/synthesis.js";
import { renderAudit, renderWhatIf } from "./views/whatif.js";

const VIEWS: ViewName[] = ["Synthesis", "FaceInspector", "SetupBoard", "WhatIf", "Audit"];

export async function boot(root: HTMLElement, base: string, sessionId: string) {
  const api = new ApiClient(base);
  const state = new SessionViewState(api, sessionId);
  await state.refresh();

  const banner = document.createElement("div");
  banner.className = "banner";
  const nav = document.createElement("nav");
  const main = document.createElement("main");
  root.replaceChildren(banner, nav, main);

  for (const view of VIEWS) {
    const button = document.createElement("button");
    button.textContent = view;
    button.addEventListener("click", () => {
      void state.switchView(view).then(render).catch(showError);
    });
    nav.appendChild(button);
  }

  function showError(error: unknown) {
    banner.textContent =
      error instanceof VersionConflict
        ? "Another change landed first; state reloaded, please retry."
        : String(error);
    banner.classList.add("visible");
    void render();
  }

  async function render() {
    banner.classList.remove("visible");
    switch (state.activeView) {
      case "Synthesis": {
        const audit = await api.audit(sessionId);
        main.innerHTML = renderSynthesis(state.summary!, audit);
        break;
      }
      case "FaceInspector": {
        if (!state.selectedFace) {
          const accessible = state.faces.filter((f) => !f.inaccessible);
          main.innerHTML = `<ul class="face-list">${accessible
            .map((f) => `<li><button data-face="${f.face}">${f.face}</button></li>`)
            .join("")}</ul>`;
          main.querySelectorAll("button[data-face]").forEach((button) => {
            button.addEventListener("click", () => {
              void state
                .openFace((button as HTMLButtonElement).dataset.face!)
                .then(render)
                .catch(showError);
            });
          });
          return;
        }
        main.innerHTML = renderCandidatePanel(state.candidates!);
        main.querySelectorAll("button[data-action='choose']").forEach((button) => {
          button.addEventListener("click", () => {
            const key = (button as HTMLButtonElement).dataset.key!;
            void state
              .selectAlternative(state.selectedFace!, key)
              .then(render)
              .catch(showError);
          });
        });
        const form = main.querySelector("form[data-action='custom']");
        form?.addEventListener("submit", (event) => {
          event.preventDefault();
          const data = new FormData(form as HTMLFormElement);
          const custom: CustomConfig = {
            tool: String(data.get("tool")),
            mfg_type: String(data.get("mfg_type")),
            mode: String(data.get("mode")),
            tmc: String(data.get("tmc")),
          };
          const feed = data.get("feed_rate");
          if (feed) custom.conditions = { feed_rate: Number(feed) };
          void state
            .selectCustom(state.selectedFace!, custom)
            .then(render)
            .catch(showError);
        });
        break;
      }
      case "SetupBoard": {
        main.innerHTML = renderSetupBoard(state.plan!.document);
        break;
      }
      case "WhatIf": {
        const oseId = prompt("OSE id to expand", "ose-plan-rough-small") ?? "";
        const payload = await api.whatIf(sessionId, oseId, ["mfg_type", "mode", "tmc"]);
        main.innerHTML = renderWhatIf(oseId, payload.variants);
        break;
      }
      case "Audit": {
        main.innerHTML = renderAudit(await api.audit(sessionId));
        break;
      }
    }
  }

  await render();
  return state;
}
