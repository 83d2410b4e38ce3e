import { describe, expect, it } from "vitest";

import {
  applyRejection,
  applyServerState,
  bannerFor,
  cardLabel,
  clickCell,
  newView,
  selectable,
  winningColumns,
} from "../src/state.js";
import type { ApiState } from "../src/types.js";

function wonState(): ApiState {
  const grid = [0, 1, 2, 3].map((suit) =>
    Array.from({ length: 13 }, (_v, col) => ({ suit, rank: col })),
  );
  return { grid, move_count: 7, status: "WON", legal_move_count: 0 };
}

function activeState(): ApiState {
  const state = wonState();
  // swap two cards across suit rows so the board is playable-looking
  const a = state.grid[0][0];
  state.grid[0][0] = state.grid[1][5];
  state.grid[1][5] = a;
  state.status = "ACTIVE";
  state.legal_move_count = 2;
  return state;
}

describe("card labels", () => {
  it("names rank then suit", () => {
    expect(cardLabel({ suit: 1, rank: 5 })).toBe("6♥");
    expect(cardLabel({ suit: 2, rank: 2 })).toBe("3♦");
    expect(cardLabel({ suit: 0, rank: 0 })).toBe("A♠");
    expect(cardLabel({ suit: 3, rank: 12 })).toBe("K♣");
  });
});

describe("winning columns", () => {
  it("marks every column on a won board", () => {
    expect(winningColumns(wonState())).toEqual(Array(13).fill(true));
  });
  it("unmarks disturbed columns", () => {
    const winners = winningColumns(activeState());
    expect(winners[0]).toBe(false);
    expect(winners[5]).toBe(false);
    expect(winners[1]).toBe(true);
  });
});

describe("click transitions", () => {
  it("ignores clicks with no state or while busy or finished", () => {
    const empty = newView("AUTO");
    expect(clickCell(empty, { row: 0, col: 0 }).submit).toBeUndefined();
    const busy = { ...applyServerState(newView("AUTO"), activeState()), busy: true };
    expect(clickCell(busy, { row: 0, col: 0 }).submit).toBeUndefined();
    const done = applyServerState(newView("AUTO"), wonState());
    expect(clickCell(done, { row: 0, col: 0 }).submit).toBeUndefined();
  });

  it("AUTO submits the source immediately", () => {
    const view = applyServerState(newView("AUTO"), activeState());
    const out = clickCell(view, { row: 0, col: 0 });
    expect(out.submit).toEqual({ from: { row: 0, col: 0 } });
  });

  it("MANUAL selects then submits source and target", () => {
    const view = applyServerState(newView("MANUAL"), activeState());
    const first = clickCell(view, { row: 0, col: 0 });
    expect(first.submit).toBeUndefined();
    expect(first.view.selected).toEqual({ row: 0, col: 0 });
    const second = clickCell(first.view, { row: 2, col: 4 });
    expect(second.submit).toEqual({ from: { row: 0, col: 0 }, to: { row: 2, col: 4 } });
  });

  it("MANUAL second click on the source deselects", () => {
    const view = applyServerState(newView("MANUAL"), activeState());
    const first = clickCell(view, { row: 0, col: 0 });
    const second = clickCell(first.view, { row: 0, col: 0 });
    expect(second.submit).toBeUndefined();
    expect(second.view.selected).toBeNull();
  });

  it("MANUAL refuses to select a card already in its suit row", () => {
    const state = activeState();
    const view = applyServerState(newView("MANUAL"), state);
    expect(selectable(state, { row: 3, col: 3 })).toBe(false);
    const out = clickCell(view, { row: 3, col: 3 });
    expect(out.view.selected).toBeNull();
    expect(out.submit).toBeUndefined();
  });
});

describe("server confirmations", () => {
  it("adopts the confirmed grid wholesale", () => {
    const state = activeState();
    const view = applyServerState(newView("MANUAL"), state);
    expect(view.state).toBe(state);
    expect(view.selected).toBeNull();
    expect(view.busy).toBe(false);
  });

  it("a rejection resets the selection but never the grid", () => {
    const state = activeState();
    let view = applyServerState(newView("MANUAL"), state);
    view = { ...clickCell(view, { row: 0, col: 0 }).view, busy: true };
    const after = applyRejection(view, "illegal move");
    expect(after.state).toBe(state);
    expect(after.selected).toBeNull();
    expect(after.message).toBe("illegal move");
  });
});

describe("banner text", () => {
  it("reports wins, stuck boards, and the cap", () => {
    expect(bannerFor(wonState())).toContain("won in 7");
    expect(bannerFor({ ...wonState(), status: "STUCK" })).toContain("stuck");
    expect(bannerFor({ ...wonState(), status: "CAPPED" })).toContain("cap");
    expect(bannerFor(activeState())).toContain("available");
  });
});
