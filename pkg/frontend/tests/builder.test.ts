import { describe, expect, it } from "vitest";

import {
  ChipRow,
  conjunctText,
  formulaFromChips,
  renderInlineError,
  templatedEnglish,
} from "../src/builder.js";

describe("chip assembly", () => {
  it("builds a single conjunct", () => {
    expect(conjunctText(["R", "T", "F"])).toBe("(g1=R & g2=T & g3=F)");
  });

  it("assembles the three-god opening question from chips", () => {
    const rows: ChipRow[] = [
      ["R", "T", "F"],
      ["R", "F", "T"],
      ["T", "F", "R"],
      ["F", "T", "R"],
    ];
    expect(formulaFromChips(rows)).toBe(
      "(g1=R & g2=T & g3=F) | (g1=R & g2=F & g3=T) | " +
        "(g1=T & g2=F & g3=R) | (g1=F & g2=T & g3=R)",
    );
  });

  it("yields an empty formula for an empty builder", () => {
    expect(formulaFromChips([])).toBe("");
  });
});

describe("templated English rendering", () => {
  it("wraps the formula in the self-referential ask", () => {
    const text = templatedEnglish("g2=T");
    expect(text).toBe(
      "If I asked you whether god 2 is truthful, would you answer 'χ'?",
    );
  });

  it("renders operators and negative literals readably", () => {
    const text = templatedEnglish("g1!=R & g3=F");
    expect(text).toContain("god 1 is not random");
    expect(text).toContain("and");
    expect(text).toContain("god 3 is a liar");
  });
});

describe("inline parse errors", () => {
  it("anchors the caret at the reported column", () => {
    const rendered = renderInlineError("g1=", {
      column: 4,
      message: "expected god type T, F, or R",
    });
    const lines = rendered.split("\n");
    expect(lines[0]).toBe("g1=");
    expect(lines[1]).toBe("   ^ expected god type T, F, or R");
  });
});
