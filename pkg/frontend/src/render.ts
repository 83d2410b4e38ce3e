// DOM rendering: four suit rows by thirteen columns, a status banner, and
// nothing clever. The whole board re-renders from the view on every change;
// at 52 cells that is plenty fast and leaves no room for drift.

import { GameView, cardLabel, sameCell, selectable, winningColumns } from "./state.js";
import type { CellRef } from "./types.js";

export interface CellHandlers {
  onClick(cell: CellRef): void;
  onDragStart(cell: CellRef): void;
  onDrop(cell: CellRef): void;
}

export function render(view: GameView, root: HTMLElement, handlers: CellHandlers): void {
  root.textContent = "";

  const banner = document.createElement("div");
  banner.className = "banner";
  banner.dataset.status = view.state?.status ?? "NONE";
  banner.textContent = view.state === null ? "no game yet" : view.message || " ";
  root.appendChild(banner);

  if (view.state === null) {
    return;
  }

  const finished = view.state.status !== "ACTIVE";
  const winners = winningColumns(view.state);
  const board = document.createElement("div");
  board.className = "board";
  if (view.busy) {
    board.classList.add("busy");
  }

  for (let row = 0; row < 4; row++) {
    const rowEl = document.createElement("div");
    rowEl.className = "row";
    for (let col = 0; col < 13; col++) {
      const cell: CellRef = { row, col };
      const card = view.state.grid[row][col];
      const el = document.createElement("button");
      el.className = "cell";
      el.dataset.row = String(row);
      el.dataset.col = String(col);
      el.textContent = cardLabel(card);
      if (card.suit === 1 || card.suit === 2) {
        el.classList.add("red");
      }
      if (winners[col]) {
        el.classList.add("winning");
      }
      if (sameCell(view.selected, cell)) {
        el.classList.add("selected");
      }
      const movable = !finished && !view.busy && selectable(view.state, cell);
      if (movable) {
        el.classList.add("movable");
      }
      el.disabled = finished || view.busy;
      el.addEventListener("click", () => handlers.onClick(cell));
      el.draggable = movable && view.assist === "MANUAL";
      el.addEventListener("dragstart", (ev) => {
        ev.dataTransfer?.setData("text/plain", `${row},${col}`);
        handlers.onDragStart(cell);
      });
      el.addEventListener("dragover", (ev) => ev.preventDefault());
      el.addEventListener("drop", (ev) => {
        ev.preventDefault();
        handlers.onDrop(cell);
      });
      rowEl.appendChild(el);
    }
    board.appendChild(rowEl);
  }
  root.appendChild(board);
}
