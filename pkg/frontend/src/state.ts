// UI session state: the ask history, the possibility grid, and the hint
// panel.  The grid is a pure function of the server's knowledge responses —
// replaying the same history reproduces the identical grid.

export type Word = "chi" | "other";

export interface Spec {
  n: number;
  m: number;
  k: number;
}

export interface AskRecord {
  god: number;
  formula: string;
  word: Word;
}

export interface GridRow {
  assignment: string;
  eliminated: boolean;
}

export interface HintPanel {
  god: number;
  formula: string;
  balance: [number, number];
  source: string;
}

export type Phase = "active" | "declared";

export interface UiSessionState {
  sessionId: string;
  spec: Spec;
  asks: AskRecord[];
  grid: GridRow[];
  hint: HintPanel | null;
  phase: Phase;
  declaration: {
    declared: string;
    correct: boolean;
    trueAssignment: string;
    chiMeaning: "yes" | "no";
  } | null;
}

export function initialState(
  sessionId: string,
  spec: Spec,
  enumeration: string[],
): UiSessionState {
  return {
    sessionId,
    spec,
    asks: [],
    grid: enumeration.map((assignment) => ({ assignment, eliminated: false })),
    hint: null,
    phase: "active",
    declaration: null,
  };
}

/** The word as the player sees it: the unknown glyph, never a translation. */
export function glyph(word: Word): string {
  return word === "chi" ? "χ" : "—";
}

export function recordAsk(
  state: UiSessionState,
  ask: AskRecord,
  possible: string[],
): UiSessionState {
  const surviving = new Set(possible);
  return {
    ...state,
    asks: [...state.asks, ask],
    grid: state.grid.map((row) => ({
      ...row,
      eliminated: !surviving.has(row.assignment),
    })),
    hint: null,
  };
}

export function showHint(
  state: UiSessionState,
  hint: HintPanel,
): UiSessionState {
  return { ...state, hint };
}

export function recordDeclaration(
  state: UiSessionState,
  declared: string,
  correct: boolean,
  trueAssignment: string,
  chiMeaning: "yes" | "no",
): UiSessionState {
  return {
    ...state,
    phase: "declared",
    declaration: { declared, correct, trueAssignment, chiMeaning },
  };
}

export function survivors(state: UiSessionState): string[] {
  return state.grid
    .filter((row) => !row.eliminated)
    .map((row) => row.assignment);
}

/** Declaration is offered once the grid is down to one possibility; earlier
 * declarations are allowed but need confirmation. */
export function canDeclareSafely(state: UiSessionState): boolean {
  return state.phase === "active" && survivors(state).length === 1;
}
