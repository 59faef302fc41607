// The evidence board: one card per toggleable evidence item plus live
// posterior readouts. All state transitions round-trip through the server
// session, so the cards mirror the server's evidence record exactly.

import type { EvidenceApi, Marginals, VariableInfo } from "./api.js";
import { escapeHtml, posteriorBar } from "./format.js";

export interface EvidenceCard {
  variable: string;
  label: string;
  states: string[];
  /** null = unset; otherwise one of `states` */
  state: string | null;
  /** order in the discovery timeline (0-based) */
  position: number;
}

export const WATCHED = ["hypothesis", "murderer"];

/** Evidence items the board exposes as cards, in default timeline order. */
export const CARD_VARIABLES = [
  "running",
  "blood",
  "no_one_else",
  "silent",
  "statement",
  "dna_report",
];

export class EvidenceBoard {
  readonly cards: EvidenceCard[];
  posteriors: Marginals = {};
  private queue: Promise<unknown> = Promise.resolve();

  constructor(
    private readonly api: EvidenceApi,
    readonly sessionId: string,
    variables: VariableInfo[]
  ) {
    const byId = new Map(variables.map((v) => [v.id, v]));
    this.cards = CARD_VARIABLES.filter((id) => byId.has(id)).map(
      (id, position) => {
        const info = byId.get(id)!;
        return {
          variable: id,
          label: info.label,
          states: info.states,
          state: null,
          position,
        };
      }
    );
  }

  static async open(api: EvidenceApi, network = "samoan-case") {
    const info = await api.createSession(network);
    const board = new EvidenceBoard(api, info.session, info.variables);
    board.posteriors = (await api.marginals(info.session, WATCHED)).marginals;
    return board;
  }

  card(variable: string): EvidenceCard {
    const found = this.cards.find((c) => c.variable === variable);
    if (!found) throw new Error(`no card for variable '${variable}'`);
    return found;
  }

  /**
   * Set or clear one card's state. Mutations are serialized: a second
   * toggle issued while one is in flight waits for the first to land.
   */
  toggleEvidence(variable: string, state: string | null): Promise<Marginals> {
    const run = async () => {
      this.card(variable); // validate before touching the server
      const response =
        state === null
          ? await this.api.clearEvidence(this.sessionId, variable, WATCHED)
          : await this.api.setEvidence(this.sessionId, variable, state, WATCHED);
      // mirror the authoritative server record, not the local intent
      for (const c of this.cards) {
        c.state = response.evidence[c.variable] ?? null;
      }
      this.posteriors = response.marginals;
      return response.marginals;
    };
    const next = this.queue.then(run, run);
    this.queue = next.catch(() => undefined);
    return next;
  }

  /** Move a card to a new timeline slot, shifting the others. */
  reorder(variable: string, position: number): void {
    const moving = this.card(variable);
    const rest = this.cards
      .filter((c) => c !== moving)
      .sort((a, b) => a.position - b.position);
    rest.splice(Math.max(0, Math.min(position, rest.length)), 0, moving);
    rest.forEach((c, i) => (c.position = i));
  }

  evidence(): Record<string, string> {
    const out: Record<string, string> = {};
    for (const c of this.cards) {
      if (c.state !== null) out[c.variable] = c.state;
    }
    return out;
  }

  render(): string {
    const cards = [...this.cards]
      .sort((a, b) => a.position - b.position)
      .map(renderCard)
      .join("");
    const readouts = WATCHED.filter((v) => v in this.posteriors)
      .map((v) => renderReadout(v, this.posteriors[v]))
      .join("");
    return `<div class="board"><div class="cards">${cards}</div><div class="readouts">${readouts}</div></div>`;
  }
}

export function renderCard(card: EvidenceCard): string {
  const buttons = card.states
    .map(
      (s) =>
        `<button class="state${card.state === s ? " active" : ""}" ` +
        `data-variable="${card.variable}" data-state="${s}">${escapeHtml(s)}</button>`
    )
    .join("");
  return (
    `<div class="card${card.state === null ? "" : " set"}" data-variable="${card.variable}">` +
    `<span class="position">${card.position + 1}</span>` +
    `<span class="label">${escapeHtml(card.label)}</span>` +
    buttons +
    `<button class="state${card.state === null ? " active" : ""}" ` +
    `data-variable="${card.variable}" data-state="">unset</button>` +
    `</div>`
  );
}

export function renderReadout(
  variable: string,
  distribution: Record<string, number>
): string {
  const bars = Object.entries(distribution)
    .map(([state, p]) => posteriorBar(state, p))
    .join("");
  return `<div class="readout" data-variable="${variable}"><h3>${escapeHtml(variable)}</h3>${bars}</div>`;
}
