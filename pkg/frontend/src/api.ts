// Typed wrapper over the play service. Expected rule rejections (422)
// come back as values; anything else unexpected throws.

import type { ApiState, Assist, CellRef } from "./types.js";

export interface CreatedGame {
  gameId: string;
  state: ApiState;
}

export type MoveResult =
  | { ok: true; state: ApiState }
  | { ok: false; status: number; error: string };

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
  ) {
    super(`api error ${status}: ${code}`);
  }
}

async function parseError(resp: Response): Promise<string> {
  try {
    const doc = (await resp.json()) as { error?: string };
    return doc.error ?? "unknown";
  } catch {
    return "unknown";
  }
}

export async function createGame(
  base: string,
  assist: Assist,
  seed: number | null,
): Promise<CreatedGame> {
  const body: { assist: Assist; seed?: number } = { assist };
  if (seed !== null) {
    body.seed = seed;
  }
  const resp = await fetch(`${base}/api/games`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  if (resp.status !== 201) {
    throw new ApiError(resp.status, await parseError(resp));
  }
  const doc = (await resp.json()) as { game_id: string; state: ApiState };
  return { gameId: doc.game_id, state: doc.state };
}

export async function fetchState(base: string, gameId: string): Promise<ApiState> {
  const resp = await fetch(`${base}/api/games/${gameId}`);
  if (resp.status !== 200) {
    throw new ApiError(resp.status, await parseError(resp));
  }
  const doc = (await resp.json()) as { state: ApiState };
  return doc.state;
}

export async function postMove(
  base: string,
  gameId: string,
  from: CellRef,
  to?: CellRef,
): Promise<MoveResult> {
  const body: { from: CellRef; to?: CellRef } = { from };
  if (to !== undefined) {
    body.to = to;
  }
  const resp = await fetch(`${base}/api/games/${gameId}/moves`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  if (resp.status === 200) {
    const doc = (await resp.json()) as { state: ApiState };
    return { ok: true, state: doc.state };
  }
  if (resp.status === 422 || resp.status === 400) {
    return { ok: false, status: resp.status, error: await parseError(resp) };
  }
  throw new ApiError(resp.status, await parseError(resp));
}
