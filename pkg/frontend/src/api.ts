// Typed client for the godpuzzle session service.  All state the UI shows
// derives from these responses; the client never sees the hidden assignment
// or what the unknown word means until declaration.

import { z } from "zod";

export const SessionCreated = z.object({
  id: z.string(),
  n: z.number().int(),
  m: z.number().int(),
  k: z.number().int(),
  mode: z.enum(["escaping", "reliable"]),
});
export type SessionCreated = z.infer<typeof SessionCreated>;

export const AskResponse = z.object({
  word: z.enum(["chi", "other"]),
  question_number: z.number().int(),
});
export type AskResponse = z.infer<typeof AskResponse>;

export const KnowledgeResponse = z.object({
  possible: z.array(z.string()),
});
export type KnowledgeResponse = z.infer<typeof KnowledgeResponse>;

export const HintResponse = z.object({
  god: z.number().int(),
  formula: z.string(),
  balance: z.tuple([z.number(), z.number()]),
  source: z.string(),
});
export type HintResponse = z.infer<typeof HintResponse>;

export const DeclareResponse = z.object({
  correct: z.boolean(),
  true_assignment: z.string(),
  chi_meaning: z.enum(["yes", "no"]),
  transcript: z.string(),
});
export type DeclareResponse = z.infer<typeof DeclareResponse>;

export const StrategyCatalog = z.object({
  names: z.array(z.string()),
});

const ParsePosition = z.object({
  message: z.string(),
  column: z.number().int(),
});

/** A 400 from the formula parser, carrying the 1-based error column. */
export class FormulaError extends Error {
  readonly column: number;

  constructor(message: string, column: number) {
    super(message);
    this.column = column;
  }
}

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

export interface NewSessionRequest {
  n: number;
  m: number;
  k: number;
  mode?: "escaping" | "reliable";
  seed?: number;
}

async function raiseFor(response: Response): Promise<never> {
  let detail: unknown = undefined;
  try {
    detail = (await response.json()).detail;
  } catch {
    // non-JSON error body; fall through to the generic error
  }
  const position = ParsePosition.safeParse(detail);
  if (response.status === 400 && position.success) {
    throw new FormulaError(position.data.message, position.data.column);
  }
  const message = typeof detail === "string" ? detail : response.statusText;
  throw new ApiError(response.status, message);
}

export class GodPuzzleClient {
  constructor(private readonly baseUrl: string) {}

  private async post(path: string, body?: unknown): Promise<unknown> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? "{}" : JSON.stringify(body),
    });
    if (!response.ok) await raiseFor(response);
    return response.json();
  }

  private async get(path: string): Promise<unknown> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) await raiseFor(response);
    return response.json();
  }

  async newSession(request: NewSessionRequest): Promise<SessionCreated> {
    return SessionCreated.parse(await this.post("/session", request));
  }

  async ask(id: string, god: number, formula: string): Promise<AskResponse> {
    return AskResponse.parse(
      await this.post(`/session/${id}/ask`, { god, formula }),
    );
  }

  async knowledge(id: string): Promise<KnowledgeResponse> {
    return KnowledgeResponse.parse(await this.get(`/session/${id}/knowledge`));
  }

  async hint(id: string): Promise<HintResponse> {
    return HintResponse.parse(await this.post(`/session/${id}/hint`));
  }

  async declare(id: string, assignment: string): Promise<DeclareResponse> {
    return DeclareResponse.parse(
      await this.post(`/session/${id}/declare`, { assignment }),
    );
  }

  async strategies(): Promise<string[]> {
    return StrategyCatalog.parse(await this.get("/catalog/strategies")).names;
  }
}
