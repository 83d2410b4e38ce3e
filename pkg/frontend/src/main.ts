// Wiring: one view object, one in-flight request at a time, every accepted
// response re-rendered from the server's state.

import { createGame, fetchState, postMove } from "./api.js";
import {
  GameView,
  MoveRequestIntent,
  applyRejection,
  applyServerState,
  clickCell,
  newView,
} from "./state.js";
import { render } from "./render.js";
import type { Assist, CellRef } from "./types.js";

const base = "";

let view: GameView = newView();
let dragSource: CellRef | null = null;

const root = document.getElementById("board-root") as HTMLElement;
const newGameBtn = document.getElementById("new-game") as HTMLButtonElement;
const seedInput = document.getElementById("seed") as HTMLInputElement;
const assistToggle = document.getElementById("assist") as HTMLSelectElement;
const retryBox = document.getElementById("retry") as HTMLElement;

function redraw(): void {
  render(view, root, {
    onClick: handleCell,
    onDragStart: (cell) => {
      dragSource = cell;
    },
    onDrop: (cell) => {
      if (dragSource !== null && view.assist === "MANUAL" && !view.busy) {
        submit({ from: dragSource, to: cell });
        dragSource = null;
      }
    },
  });
}

function handleCell(cell: CellRef): void {
  const outcome = clickCell(view, cell);
  view = outcome.view;
  redraw();
  if (outcome.submit) {
    void submit(outcome.submit);
  }
}

async function submit(intent: MoveRequestIntent): Promise<void> {
  const gameId = view.gameId;
  if (gameId === null || view.busy) {
    return;
  }
  view = { ...view, busy: true };
  redraw();
  try {
    const result = await postMove(base, gameId, intent.from, intent.to);
    view = result.ok
      ? applyServerState(view, result.state)
      : applyRejection(view, "illegal move");
    retryBox.hidden = true;
  } catch {
    // network trouble: state untouched, offer a refresh
    view = { ...view, busy: false };
    retryBox.hidden = false;
  }
  redraw();
}

async function startGame(): Promise<void> {
  const assist = assistToggle.value as Assist;
  const raw = seedInput.value.trim();
  const seed = raw === "" ? null : Number(raw);
  view = { ...newView(assist), busy: true };
  redraw();
  try {
    const created = await createGame(base, assist, seed);
    view = applyServerState({ ...newView(assist), gameId: created.gameId }, created.state);
    retryBox.hidden = true;
  } catch {
    view = { ...newView(assist), message: "could not reach the server" };
  }
  redraw();
}

async function refresh(): Promise<void> {
  if (view.gameId === null) {
    return;
  }
  try {
    view = applyServerState(view, await fetchState(base, view.gameId));
    retryBox.hidden = true;
  } catch {
    retryBox.hidden = false;
  }
  redraw();
}

newGameBtn.addEventListener("click", () => void startGame());
(document.getElementById("retry-btn") as HTMLButtonElement).addEventListener(
  "click",
  () => void refresh(),
);

redraw();
