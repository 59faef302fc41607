// Replay a scripted interaction against a live service instance and check
// that every displayed value equals what the API reports. The service is
// spawned from the Python package in the repository root.

import { type ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { CARD_VARIABLES, EvidenceBoard } from "../src/board.js";
import { compareSequences, renderComparison, renderPanel } from "../src/panels.js";
import { percent1 } from "../src/format.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
const api = new ApiClient(BASE);

async function waitForService(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      const response = await fetch(`${BASE}/networks`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
}

beforeAll(async () => {
  server = spawn("casebn", ["serve", "--port", String(PORT)], {
    stdio: "ignore",
  });
  await waitForService(20000);
}, 30000);

afterAll(() => {
  server?.kill();
});

describe("live replay", () => {
  it("lists the bundled networks", async () => {
    const { networks } = await api.listNetworks();
    expect(networks).toContain("samoan-case");
    expect(networks).toContain("samoan-case-dna");
  });

  it(
    "toggling the four evidence items tracks the service exactly",
    async () => {
      const board = await EvidenceBoard.open(api);
      expect(board.posteriors.hypothesis.killer).toBeCloseTo(0.5, 12);

      const expected = ["55.3%", "58.2%", "92.6%", "97.4%"];
      const items = CARD_VARIABLES.slice(0, 4);
      for (let i = 0; i < items.length; i++) {
        await board.toggleEvidence(items[i], "true");
        // displayed bar value matches an independent fetch of the marginals
        const fresh = await api.marginals(board.sessionId, ["hypothesis"]);
        expect(board.posteriors.hypothesis.killer).toBe(
          fresh.marginals.hypothesis.killer
        );
        expect(percent1(board.posteriors.hypothesis.killer)).toBe(expected[i]);
        expect(board.render()).toContain(expected[i]);
      }

      // untoggle everything: bars return to the priors
      for (const item of items) {
        await board.toggleEvidence(item, null);
      }
      expect(board.posteriors.hypothesis.killer).toBeCloseTo(0.5, 12);
      expect(board.evidence()).toEqual({});
    },
    30000
  );

  it(
    "any toggle order reaches the same final bars",
    async () => {
      const orders = [
        ["running", "blood", "no_one_else", "silent"],
        ["silent", "no_one_else", "blood", "running"],
        ["blood", "silent", "running", "no_one_else"],
      ];
      const finals: number[] = [];
      for (const order of orders) {
        const board = await EvidenceBoard.open(api);
        for (const item of order) {
          await board.toggleEvidence(item, "true");
        }
        finals.push(board.posteriors.hypothesis.killer);
      }
      expect(finals[1]).toBeCloseTo(finals[0], 12);
      expect(finals[2]).toBeCloseTo(finals[0], 12);
    },
    30000
  );

  it(
    "compare_sequences renders the two knowledge states from live endpoints",
    async () => {
      const board = await EvidenceBoard.open(api);
      for (const item of CARD_VARIABLES) {
        await board.toggleEvidence(item, "true");
      }
      const comparison = await compareSequences(api, board.sessionId, board.evidence());
      const unaware = comparison.one.readouts.hypothesis.killer;
      const aware = comparison.two.readouts.hypothesis.killer;
      expect(unaware).toBeGreaterThan(0.25);
      expect(unaware).toBeLessThan(0.45);
      expect(aware).toBeGreaterThan(0.85);

      const html = renderComparison(comparison);
      expect(html).toContain(percent1(unaware));
      expect(html).toContain(percent1(aware));

      // the comparison is a what-if: the board session is untouched
      const fresh = await api.marginals(board.sessionId, ["hypothesis"]);
      expect(fresh.evidence).toEqual(board.evidence());
    },
    30000
  );

  it(
    "without the statement the two sequences coincide",
    async () => {
      const board = await EvidenceBoard.open(api);
      for (const item of CARD_VARIABLES.slice(0, 4)) {
        await board.toggleEvidence(item, "true");
      }
      const comparison = await compareSequences(api, board.sessionId, board.evidence());
      expect(comparison.one.readouts.hypothesis.killer).toBeCloseTo(
        comparison.two.readouts.hypothesis.killer,
        12
      );
      // identical bars on both panels (names aside)
      const strip = (html: string) => html.replace(/Sequence (One|Two)/, "")
        .replace(/knew = (true|false)/, "");
      expect(strip(renderPanel(comparison.one))).toBe(
        strip(renderPanel(comparison.two))
      );
    },
    30000
  );

  it(
    "genotype evidence alone drives the Samoan-origin readout",
    async () => {
      const info = await api.createSession("samoan-case-dna");
      const profile: Record<string, string> = {
        "D2.genotype": "18/22",
        "CSF.genotype": "11/14",
        "D7.genotype": "12/12",
        "D21.genotype": "28/34.2",
        "D8.genotype": "10/10",
        "D16.genotype": "14/14",
      };
      const genotypes = info.variables.filter((v) => v.id.endsWith(".genotype"));
      expect(genotypes.map((v) => v.id).sort()).toEqual(
        Object.keys(profile).sort()
      );
      let last = 0;
      for (const g of genotypes) {
        expect(g.states).toContain(profile[g.id]);
        const response = await api.setEvidence(info.session, g.id, profile[g.id], [
          "samoan_origin",
        ]);
        last = response.marginals.samoan_origin.true;
      }
      expect(last).toBeGreaterThan(0.9);
    },
    30000
  );

  it("contradictory evidence is refused and leaves the session intact", async () => {
    const info = await api.createSession("samoan-case");
    await api.setEvidence(info.session, "hypothesis", "killer", []);
    await expect(
      api.setEvidence(info.session, "murderer", "samoan", [])
    ).rejects.toMatchObject({ status: 409 });
    const after = await api.marginals(info.session, ["murderer"]);
    expect(after.evidence).toEqual({ hypothesis: "killer" });
  });
});
