export interface ApiCard {
  suit: number;
  rank: number;
}

export type GameStatus = "ACTIVE" | "WON" | "STUCK" | "CAPPED";

export interface ApiState {
  grid: ApiCard[][];
  move_count: number;
  status: GameStatus;
  legal_move_count: number;
}

export interface CellRef {
  row: number;
  col: number;
}

export type Assist = "AUTO" | "MANUAL";
