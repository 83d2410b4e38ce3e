// Client-side view state. The grid shown is always the last state the
// server confirmed: a rejected move resets the selection, never the grid.

import type { ApiCard, ApiState, Assist, CellRef } from "./types.js";

export interface GameView {
  gameId: string | null;
  assist: Assist;
  state: ApiState | null;
  selected: CellRef | null;
  busy: boolean;
  message: string;
}

export interface MoveRequestIntent {
  from: CellRef;
  to?: CellRef;
}

export interface ClickOutcome {
  view: GameView;
  submit?: MoveRequestIntent;
}

const RANKS = "A23456789TJQK";
const SUITS = ["♠", "♥", "♦", "♣"]; // spades hearts diamonds clubs

export function newView(assist: Assist = "MANUAL"): GameView {
  return { gameId: null, assist, state: null, selected: null, busy: false, message: "" };
}

export function cardLabel(card: ApiCard): string {
  return RANKS[card.rank] + SUITS[card.suit];
}

export function sameCell(a: CellRef | null, b: CellRef | null): boolean {
  return a !== null && b !== null && a.row === b.row && a.col === b.col;
}

/** A column is winning when its four cards share one rank, each in its suit row. */
export function winningColumns(state: ApiState): boolean[] {
  const out: boolean[] = [];
  for (let col = 0; col < 13; col++) {
    const rank = state.grid[0][col].rank;
    let ok = true;
    for (let row = 0; row < 4; row++) {
      const card = state.grid[row][col];
      if (card.suit !== row || card.rank !== rank) {
        ok = false;
        break;
      }
    }
    out.push(ok);
  }
  return out;
}

/** A cell can start a move only if its card sits outside its own suit row. */
export function selectable(state: ApiState, cell: CellRef): boolean {
  return state.grid[cell.row][cell.col].suit !== cell.row;
}

export function clickCell(view: GameView, cell: CellRef): ClickOutcome {
  if (view.busy || view.state === null || view.state.status !== "ACTIVE") {
    return { view };
  }
  if (view.assist === "AUTO") {
    return {
      view: { ...view, selected: cell, message: "" },
      submit: { from: cell },
    };
  }
  if (view.selected === null) {
    if (!selectable(view.state, cell)) {
      return { view: { ...view, message: "pick a card outside its suit row" } };
    }
    return { view: { ...view, selected: cell, message: "" } };
  }
  if (sameCell(view.selected, cell)) {
    return { view: { ...view, selected: null, message: "" } };
  }
  return {
    view: { ...view, message: "" },
    submit: { from: view.selected, to: cell },
  };
}

/** Server said yes: adopt its state wholesale and clear the selection. */
export function applyServerState(view: GameView, state: ApiState): GameView {
  return { ...view, state, selected: null, busy: false, message: bannerFor(state) };
}

/** Server said no: the grid stays, the selection resets. */
export function applyRejection(view: GameView, message: string): GameView {
  return { ...view, selected: null, busy: false, message };
}

export function bannerFor(state: ApiState): string {
  switch (state.status) {
    case "WON":
      return `won in ${state.move_count} moves`;
    case "STUCK":
      return `stuck after ${state.move_count} moves`;
    case "CAPPED":
      return `move cap reached at ${state.move_count}`;
    default:
      return `${state.move_count} moves, ${state.legal_move_count} available`;
  }
}
