// Sequence comparison: the same evidence evaluated under both knowledge
// states, side by side. Uses what-if so the comparison never disturbs the
// board's live session.

import type { EvidenceApi, Marginals } from "./api.js";
import { WATCHED } from "./board.js";
import { posteriorBar } from "./format.js";

export interface ScenarioPanel {
  name: string;
  /** evidence shown on the panel, including the knowledge switch */
  evidence: Record<string, string>;
  readouts: Marginals;
}

export interface SequenceComparison {
  one: ScenarioPanel;
  two: ScenarioPanel;
}

/**
 * Sequence One: the defendant's account predates the report (knew=false).
 * Sequence Two: the report was already known when the account was given
 * (knew=true). Both panels share the board's other evidence.
 */
export async function compareSequences(
  api: EvidenceApi,
  sessionId: string,
  evidence: Record<string, string>
): Promise<SequenceComparison> {
  const build = async (name: string, knew: string): Promise<ScenarioPanel> => {
    const withKnew = { ...evidence, knew };
    const response = await api.whatIf(sessionId, withKnew, WATCHED);
    return { name, evidence: withKnew, readouts: response.marginals };
  };
  const [one, two] = await Promise.all([
    build("Sequence One", "false"),
    build("Sequence Two", "true"),
  ]);
  return { one, two };
}

export function renderPanel(panel: ScenarioPanel): string {
  const items = Object.entries(panel.evidence)
    .map(([variable, state]) => `<li>${variable} = ${state}</li>`)
    .join("");
  const bars = WATCHED.filter((v) => v in panel.readouts)
    .map((v) => {
      const rows = Object.entries(panel.readouts[v])
        .map(([state, p]) => posteriorBar(`${v}=${state}`, p))
        .join("");
      return rows;
    })
    .join("");
  return (
    `<div class="panel"><h2>${panel.name}</h2>` +
    `<ul class="evidence">${items}</ul>${bars}</div>`
  );
}

export function renderComparison(comparison: SequenceComparison): string {
  return (
    `<div class="comparison">` +
    renderPanel(comparison.one) +
    renderPanel(comparison.two) +
    `</div>`
  );
}
