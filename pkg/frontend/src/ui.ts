// Minimal DOM wiring for the play page: spec form, question builder,
// possibility grid, hint panel, and declaration dialog.

import { FormulaError, GodPuzzleClient } from "./api.js";
import {
  ChipRow,
  GodTypeLetter,
  formulaFromChips,
  renderInlineError,
  templatedEnglish,
} from "./builder.js";
import { PlaySession } from "./play.js";
import { canDeclareSafely, glyph, survivors } from "./state.js";

const LETTERS: GodTypeLetter[] = ["T", "F", "R"];

export function mount(root: HTMLElement, baseUrl: string): void {
  const client = new GodPuzzleClient(baseUrl);
  let session: PlaySession | null = null;
  let chipRows: ChipRow[] = [];

  root.innerHTML = `
    <form id="spec-form">
      <label>gods <input id="spec-n" type="number" value="3" min="1"></label>
      <label>random <input id="spec-m" type="number" value="1" min="0"></label>
      <label>truthful <input id="spec-k" type="number" value="1" min="0"></label>
      <button type="submit">new session</button>
    </form>
    <section id="builder">
      <div id="chips"></div>
      <button id="add-row" type="button">add conjunct</button>
      <input id="free-text" placeholder="or type a formula: g1=T | g2=R">
      <label>ask god <input id="ask-god" type="number" value="1" min="1"></label>
      <button id="ask" type="button" disabled>ask</button>
      <p id="english"></p>
      <pre id="formula-error" hidden></pre>
    </section>
    <section>
      <button id="hint" type="button">hint</button>
      <p id="hint-panel"></p>
    </section>
    <table id="grid"></table>
    <p id="words"></p>
    <section id="declaration">
      <button id="declare" type="button" disabled>declare</button>
      <p id="verdict"></p>
    </section>
  `;

  const el = <T extends HTMLElement>(id: string): T =>
    root.querySelector<T>(`#${id}`)!;

  function currentFormula(): string {
    const free = el<HTMLInputElement>("free-text").value.trim();
    return free !== "" ? free : formulaFromChips(chipRows);
  }

  function render(): void {
    const formula = currentFormula();
    el<HTMLButtonElement>("ask").disabled = session === null || formula === "";
    el<HTMLParagraphElement>("english").textContent =
      formula === "" ? "" : templatedEnglish(formula);
    if (session === null) return;

    const grid = el<HTMLTableElement>("grid");
    grid.innerHTML = "";
    for (const row of session.state.grid) {
      const tr = document.createElement("tr");
      const td = document.createElement("td");
      td.textContent = row.assignment;
      if (row.eliminated) td.style.textDecoration = "line-through";
      tr.appendChild(td);
      grid.appendChild(tr);
    }

    el<HTMLParagraphElement>("words").textContent = session.state.asks
      .map((ask) => `g${ask.god}: ${glyph(ask.word)}`)
      .join("  ");

    const declare = el<HTMLButtonElement>("declare");
    declare.disabled = session.state.phase !== "active";
    declare.textContent = canDeclareSafely(session.state)
      ? `declare ${survivors(session.state)[0]}`
      : "declare (early)";

    const hint = session.state.hint;
    el<HTMLParagraphElement>("hint-panel").textContent = hint
      ? `ask god ${hint.god}: ${hint.formula} — splits ${hint.balance[0]}/${hint.balance[1]}`
      : "";

    const verdict = session.state.declaration;
    el<HTMLParagraphElement>("verdict").textContent = verdict
      ? (verdict.correct ? "correct!" : "wrong") +
        ` — the gods were ${verdict.trueAssignment}` +
        ` and 'χ' meant ${verdict.chiMeaning}`
      : "";
  }

  function renderChips(): void {
    const chips = el<HTMLDivElement>("chips");
    chips.innerHTML = "";
    chipRows.forEach((row, rowIndex) => {
      const div = document.createElement("div");
      row.forEach((letter, god) => {
        const button = document.createElement("button");
        button.type = "button";
        button.textContent = `g${god + 1}=${letter}`;
        button.addEventListener("click", () => {
          const next = LETTERS[(LETTERS.indexOf(letter) + 1) % 3]!;
          chipRows[rowIndex]![god] = next;
          renderChips();
          render();
        });
        div.appendChild(button);
      });
      chips.appendChild(div);
    });
  }

  el<HTMLFormElement>("spec-form").addEventListener("submit", (event) => {
    event.preventDefault();
    const spec = {
      n: el<HTMLInputElement>("spec-n").valueAsNumber,
      m: el<HTMLInputElement>("spec-m").valueAsNumber,
      k: el<HTMLInputElement>("spec-k").valueAsNumber,
    };
    void PlaySession.start(client, spec).then((started) => {
      session = started;
      chipRows = [];
      renderChips();
      render();
    });
  });

  el<HTMLButtonElement>("add-row").addEventListener("click", () => {
    const n = el<HTMLInputElement>("spec-n").valueAsNumber;
    chipRows.push(Array.from({ length: n }, () => "T" as GodTypeLetter));
    renderChips();
    render();
  });

  el<HTMLInputElement>("free-text").addEventListener("input", render);

  el<HTMLButtonElement>("ask").addEventListener("click", () => {
    if (session === null) return;
    const formula = currentFormula();
    const god = el<HTMLInputElement>("ask-god").valueAsNumber;
    const errorBox = el<HTMLPreElement>("formula-error");
    errorBox.hidden = true;
    void session
      .ask(god, formula)
      .then(render)
      .catch((error: unknown) => {
        if (error instanceof FormulaError) {
          errorBox.textContent = renderInlineError(formula, error);
          errorBox.hidden = false;
        } else {
          throw error;
        }
      });
  });

  el<HTMLButtonElement>("hint").addEventListener("click", () => {
    if (session === null) return;
    void session.requestHint().then(render);
  });

  el<HTMLButtonElement>("declare").addEventListener("click", () => {
    if (session === null) return;
    if (canDeclareSafely(session.state)) {
      void session.declareSurvivor().then(render);
      return;
    }
    const remaining = survivors(session.state);
    const choice = window.prompt(
      `Grid still has ${remaining.length} possibilities. Declare which?`,
      remaining[0] ?? "",
    );
    if (choice) void session.declare(choice).then(render);
  });

  render();
}
