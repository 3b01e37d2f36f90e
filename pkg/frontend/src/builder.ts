// Question builder: assemble a formula either from free text (validated
// server-side) or from clicked god-type chips, one conjunct per row.

export type GodTypeLetter = "T" | "F" | "R";

/** One chip row: a complete god-type assignment, e.g. ["R", "T", "F"]. */
export type ChipRow = GodTypeLetter[];

const TYPE_NAMES: Record<GodTypeLetter, string> = {
  T: "truthful",
  F: "a liar",
  R: "random",
};

/** A single conjunct `(g1=R & g2=T & g3=F)` from a chip row. */
export function conjunctText(row: ChipRow): string {
  const literals = row.map((letter, i) => `g${i + 1}=${letter}`);
  return `(${literals.join(" & ")})`;
}

/** The disjunction of all chip rows, in click order; empty input yields an
 * empty string so the ask button stays disabled. */
export function formulaFromChips(rows: ChipRow[]): string {
  if (rows.length === 0) return "";
  return rows.map(conjunctText).join(" | ");
}

/** The templated English rendering shown next to the ask button. */
export function templatedEnglish(formula: string): string {
  return `If I asked you whether ${describe(formula)}, would you answer 'χ'?`;
}

function describe(formula: string): string {
  // Keep operator text readable; the formula grammar itself is shown as-is
  // inside the clause.
  return formula
    .replace(/g(\d+)=([TFR])/g, (_, god, letter: GodTypeLetter) =>
      `god ${god} is ${TYPE_NAMES[letter]}`)
    .replace(/g(\d+)!=([TFR])/g, (_, god, letter: GodTypeLetter) =>
      `god ${god} is not ${TYPE_NAMES[letter]}`)
    .replace(/&/g, "and")
    .replace(/\|/g, "or")
    .replace(/!/g, "not ");
}

export interface InlineError {
  column: number;
  message: string;
}

/** Position-anchored inline rendering of a server parse error: the formula
 * text with a caret line underneath. */
export function renderInlineError(
  formula: string,
  error: InlineError,
): string {
  const caret = " ".repeat(Math.max(0, error.column - 1)) + "^";
  return `${formula}\n${caret} ${error.message}`;
}
