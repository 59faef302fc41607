// Browser entry point: mounts the board and wires card buttons.

import { ApiClient } from "./api.js";
import { EvidenceBoard } from "./board.js";
import { compareSequences, renderComparison } from "./panels.js";

const SERVICE_URL =
  (globalThis as { CASEBN_SERVICE_URL?: string }).CASEBN_SERVICE_URL ??
  "http://127.0.0.1:8000";

async function mount(root: HTMLElement): Promise<void> {
  const api = new ApiClient(SERVICE_URL);
  const board = await EvidenceBoard.open(api);

  const redraw = () => {
    root.innerHTML =
      board.render() +
      `<button id="compare">Compare sequences</button>` +
      `<div id="comparison"></div>`;
  };
  redraw();

  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.id === "compare") {
      void compareSequences(api, board.sessionId, board.evidence()).then(
        (comparison) => {
          const slot = root.querySelector("#comparison");
          if (slot) slot.innerHTML = renderComparison(comparison);
        }
      );
      return;
    }
    const variable = target.dataset.variable;
    if (variable === undefined || target.dataset.state === undefined) return;
    const state = target.dataset.state === "" ? null : target.dataset.state;
    void board.toggleEvidence(variable, state).then(redraw);
  });
}

const root = typeof document !== "undefined" && document.getElementById("app");
if (root) void mount(root);
