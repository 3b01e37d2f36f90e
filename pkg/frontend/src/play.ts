// The play loop: ask, record the word, refresh the grid from the knowledge
// endpoint, repeat; declare when the grid is a singleton (or early, with
// confirmation in the UI layer).

import { GodPuzzleClient } from "./api.js";
import {
  AskRecord,
  UiSessionState,
  initialState,
  recordAsk,
  recordDeclaration,
  showHint,
  survivors,
} from "./state.js";

export class PlaySession {
  private constructor(
    private readonly client: GodPuzzleClient,
    public state: UiSessionState,
  ) {}

  static async start(
    client: GodPuzzleClient,
    spec: { n: number; m: number; k: number },
    options: { mode?: "escaping" | "reliable"; seed?: number } = {},
  ): Promise<PlaySession> {
    const created = await client.newSession({ ...spec, ...options });
    const knowledge = await client.knowledge(created.id);
    return new PlaySession(
      client,
      initialState(created.id, spec, knowledge.possible),
    );
  }

  /** Ask one question and fold the server's knowledge into the grid. */
  async ask(god: number, formula: string): Promise<AskRecord> {
    const answer = await this.client.ask(this.state.sessionId, god, formula);
    const knowledge = await this.client.knowledge(this.state.sessionId);
    const record: AskRecord = { god, formula, word: answer.word };
    this.state = recordAsk(this.state, record, knowledge.possible);
    return record;
  }

  async requestHint(): Promise<UiSessionState> {
    const hint = await this.client.hint(this.state.sessionId);
    this.state = showHint(this.state, hint);
    return this.state;
  }

  async declare(assignment: string): Promise<UiSessionState> {
    const verdict = await this.client.declare(this.state.sessionId, assignment);
    this.state = recordDeclaration(
      this.state,
      assignment,
      verdict.correct,
      verdict.true_assignment,
      verdict.chi_meaning,
    );
    return this.state;
  }

  /** Declare the single surviving assignment; throws if the grid is not a
   * singleton (the UI asks for confirmation in that case instead). */
  async declareSurvivor(): Promise<UiSessionState> {
    const remaining = survivors(this.state);
    if (remaining.length !== 1) {
      throw new Error(
        `grid has ${remaining.length} possibilities, not a singleton`,
      );
    }
    return this.declare(remaining[0]!);
  }
}
