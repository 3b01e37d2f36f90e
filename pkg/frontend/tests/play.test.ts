// End-to-end play against a real backend: spawns `godpuzzle serve`, drives
// the bottom-up three-god solution to a singleton grid, and declares.

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { FormulaError, GodPuzzleClient } from "../src/api.js";
import { PlaySession } from "../src/play.js";
import { canDeclareSafely, survivors } from "../src/state.js";

const PORT = 8937;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

beforeAll(async () => {
  server = spawn("python3", ["-m", "godpuzzle.cli", "serve",
                             "--port", String(PORT)], {
    stdio: "ignore",
  });
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const response = await fetch(`${BASE}/catalog/strategies`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("backend did not start");
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
}, 40_000);

afterAll(() => {
  server.kill();
});

// The bottom-up solution transcribed as nested branches: [god, formula,
// subtree-on-chi, subtree-on-other] with string leaves.
type Tree = string | [number, string, Tree, Tree];

const Q1 =
  "(g1=R & g2=T & g3=F) | (g1=R & g2=F & g3=T) | " +
  "(g1=T & g2=F & g3=R) | (g1=F & g2=T & g3=R)";

const BOTTOM_UP: Tree = [1, Q1,
  [2, "g2=T",
    [2, "g1=R", "RTF", "FTR"],
    [2, "g1=R", "RFT", "TFR"]],
  [3, "g3=T",
    [3, "g1=R", "RFT", "FRT"],
    [3, "g1=R", "RTF", "TRF"]],
];

describe("scripted play", () => {
  it("drives the bottom-up solution to a singleton grid and declares "
     + "correctly", async () => {
    const client = new GodPuzzleClient(BASE);
    for (let seed = 0; seed < 10; seed++) {
      const session = await PlaySession.start(client, { n: 3, m: 1, k: 1 },
                                              { seed });
      let node: Tree = BOTTOM_UP;
      while (typeof node !== "string") {
        const [god, formula, onChi, onOther] = node;
        const record = await session.ask(god, formula);
        node = record.word === "chi" ? onChi : onOther;
      }
      expect(survivors(session.state)).toEqual([node]);
      expect(canDeclareSafely(session.state)).toBe(true);
      const final = await session.declareSurvivor();
      expect(final.phase).toBe("declared");
      expect(final.declaration?.correct).toBe(true);
      expect(final.declaration?.trueAssignment).toBe(node);
    }
  }, 30_000);

  it("shows a (4,4)-balanced hint on a fresh session", async () => {
    const client = new GodPuzzleClient(BASE);
    const session = await PlaySession.start(client, { n: 3, m: 1, k: 1 });
    const state = await session.requestHint();
    expect(state.hint).not.toBeNull();
    expect(state.hint!.balance).toEqual([4, 4]);
    expect(state.hint!.god).toBeGreaterThanOrEqual(1);
    expect(state.hint!.god).toBeLessThanOrEqual(3);
  });

  it("surfaces parser errors with their column for inline display",
     async () => {
    const client = new GodPuzzleClient(BASE);
    const session = await PlaySession.start(client, { n: 3, m: 1, k: 1 });
    await expect(session.ask(1, "g1=")).rejects.toSatisfy(
      (error: unknown) =>
        error instanceof FormulaError && error.column === 4,
    );
  });

  it("lists the built-in strategies", async () => {
    const client = new GodPuzzleClient(BASE);
    expect(await client.strategies()).toContain("three_bottom_up");
  });

  it("declaring early returns a verdict that may be wrong", async () => {
    const client = new GodPuzzleClient(BASE);
    // Seed chosen so the hidden assignment is known to differ from "TFR"
    // is not assumed; only the response shape is.
    const session = await PlaySession.start(client, { n: 3, m: 1, k: 1 },
                                            { seed: 123 });
    const state = await session.declare("TFR");
    expect(state.phase).toBe("declared");
    expect(typeof state.declaration?.correct).toBe("boolean");
    expect(state.declaration?.trueAssignment).toHaveLength(3);
  });
});
