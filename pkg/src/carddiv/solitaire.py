"""Pan-galactic solitaire: rules engine, strategies, and the win-rate harness.

The standard 52-card deck is dealt into four rows of thirteen; rows are the
suit slots (spades, hearts, diamonds, clubs top to bottom) and columns are
the racks. A card in a foreign suit row may move when its own suit row in
the same column holds a card of that suit: it swaps with the card whose
suit is the mover's row and whose rank is that anchoring card's rank,
wherever that card sits. The game is won when every column shows four
same-rank cards, each in its suit row.

Cards are small ints: ``card = suit * 13 + rank`` with suits 0..3 and ranks
0..12. Cells are ``row * 13 + col``. The scalar engine here is the
reference; the vectorized batch runner in ``simulate`` must agree with it
move for move and is tested for exactly that.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import IllegalMoveError
from .prng import Xoshiro256StarStar, splitmix64_at

ROWS = 4
COLS = 13
DECK_SIZE = 52

RANK_CHARS = "A23456789TJQK"
SUIT_CHARS = "shdc"

DEFAULT_MOVE_CAP = 2000


class Status(str, Enum):
    ACTIVE = "ACTIVE"
    WON = "WON"
    STUCK = "STUCK"
    CAPPED = "CAPPED"


class Strategy(str, Enum):
    RANDOM_LEGAL = "random"  # uniform over the legal moves
    SCAN_FIRST = "scan"  # first legal mover in row-major grid order
    GREEDY_HOME = "greedy"  # prefer landings in rank-coherent columns
    MAX_MOBILITY = "mobility"  # keep the most moves open; ties by scan order


class Move(NamedTuple):
    mover_cell: int  # cell of the card being moved (foreign row)
    mover: int  # the card there: suit X, sitting in row Y != X
    target: int  # card (Y, r) where (X, r) anchors row X of the column
    target_cell: int  # where the target currently sits


def card_name(card: int) -> str:
    return RANK_CHARS[card % 13] + SUIT_CHARS[card // 13]


@dataclass
class GameState:
    grid: list  # 52 card ids, cell-indexed
    pos: list  # 52 cells, card-indexed
    move_count: int
    status: Status
    rng: Xoshiro256StarStar | None = None

    def card_at(self, row: int, col: int) -> int:
        return self.grid[row * COLS + col]


def is_won_grid(grid: list) -> bool:
    for col in range(COLS):
        rank = grid[col] % 13
        for row in range(ROWS):
            card = grid[row * COLS + col]
            if card // 13 != row or card % 13 != rank:
                return False
    return True


def is_won(state: GameState) -> bool:
    return is_won_grid(state.grid)


def legal_moves(state: GameState) -> list:
    """All legal moves, ordered by (column, row) of the mover."""
    grid = state.grid
    moves = []
    for col in range(COLS):
        for row in range(ROWS):
            mover = grid[row * COLS + col]
            suit = mover // 13
            if suit == row:
                continue
            anchor = grid[suit * COLS + col]
            if anchor // 13 != suit:
                continue
            target = row * 13 + (anchor % 13)
            moves.append(Move(row * COLS + col, mover, target, state.pos[target]))
    return moves


def _status_for(grid: list, pos: list, move_count: int, move_cap: int | None) -> Status:
    if is_won_grid(grid):
        return Status.WON
    probe = GameState(grid, pos, move_count, Status.ACTIVE)
    if not legal_moves(probe):
        return Status.STUCK
    if move_cap is not None and move_count >= move_cap:
        return Status.CAPPED
    return Status.ACTIVE


def deal(seed: int) -> GameState:
    """Shuffle with the seeded generator and deal row-major.

    The generator stays attached to the state so random strategies draw
    from the same stream, which is what makes a whole game a pure function
    of its seed.
    """
    rng = Xoshiro256StarStar(seed)
    grid = list(range(DECK_SIZE))
    rng.shuffle(grid)
    pos = [0] * DECK_SIZE
    for cell, card in enumerate(grid):
        pos[card] = cell
    return GameState(grid, pos, 0, _status_for(grid, pos, 0, None), rng)


def apply_move(state: GameState, move: Move, move_cap: int | None = None) -> GameState:
    """Swap the mover with its target; returns the successor state."""
    if state.status is not Status.ACTIVE:
        raise IllegalMoveError(f"game is {state.status.value}, not accepting moves")
    if move not in legal_moves(state):
        raise IllegalMoveError(
            f"no legal move for {card_name(move.mover)} at cell {move.mover_cell}"
        )
    grid = list(state.grid)
    pos = list(state.pos)
    a, b = move.mover_cell, move.target_cell
    grid[a], grid[b] = grid[b], grid[a]
    pos[grid[a]] = a
    pos[grid[b]] = b
    count = state.move_count + 1
    return GameState(grid, pos, count, _status_for(grid, pos, count, move_cap), state.rng)


def _column_coherent(grid: list, col: int) -> bool:
    """True when every own-suit-row card in the column shares one rank."""
    rank = -1
    for row in range(ROWS):
        card = grid[row * COLS + col]
        if card // 13 == row:
            if rank == -1:
                rank = card % 13
            elif card % 13 != rank:
                return False
    return True


def _legal_count_in_columns(grid: list, cols: tuple) -> int:
    count = 0
    for col in cols:
        s0 = grid[col] // 13
        s1 = grid[13 + col] // 13
        s2 = grid[26 + col] // 13
        s3 = grid[39 + col] // 13
        anchored = (s0 == 0, s1 == 1, s2 == 2, s3 == 3)
        if s0 != 0 and anchored[s0]:
            count += 1
        if s1 != 1 and anchored[s1]:
            count += 1
        if s2 != 2 and anchored[s2]:
            count += 1
        if s3 != 3 and anchored[s3]:
            count += 1
    return count


def choose_move(state: GameState, strategy: Strategy, moves: list) -> Move:
    if strategy is Strategy.RANDOM_LEGAL:
        if state.rng is None:
            raise IllegalMoveError("random strategy needs a seeded state from deal()")
        return moves[state.rng.randbelow(len(moves))]
    row_major = lambda m: (m.mover_cell // COLS, m.mover_cell % COLS)
    if strategy is Strategy.SCAN_FIRST:
        return min(moves, key=row_major)
    if strategy is Strategy.MAX_MOBILITY:
        grid = state.grid
        touched = {m.mover_cell % COLS for m in moves} | {m.target_cell % COLS for m in moves}
        col_count = {c: _legal_count_in_columns(grid, (c,)) for c in touched}
        best_key, best = None, None
        for move in moves:
            a, b = move.mover_cell, move.target_cell
            ca, cb = a % COLS, b % COLS
            cols = (ca,) if ca == cb else (ca, cb)
            before = sum(col_count[c] for c in cols)
            grid[a], grid[b] = grid[b], grid[a]
            score = _legal_count_in_columns(grid, cols) - before
            grid[a], grid[b] = grid[b], grid[a]
            key = (-score, a // COLS, a % COLS)
            if best_key is None or key < best_key:
                best_key, best = key, move
        return best
    homing = [m for m in moves if _column_coherent(state.grid, m.mover_cell % COLS)]
    return min(homing or moves, key=row_major)


class PlayOutcome(NamedTuple):
    strategy: str
    seed: int
    status: str
    move_count: int
    grid_hash: str


def grid_hash(grid: list) -> str:
    return hashlib.sha256(bytes(grid)).hexdigest()


def play(strategy: Strategy, seed: int, move_cap: int = DEFAULT_MOVE_CAP) -> PlayOutcome:
    """Play one full game; deterministic per (strategy, seed, cap).

    Status priority each turn is WON, then STUCK, then CAPPED, matching
    apply_move's recomputation and the batch engine. The loop mutates its
    own freshly dealt state in place rather than paying apply_move's
    revalidation for a move it just enumerated.
    """
    if move_cap < 1:
        raise ValueError("move cap must be >= 1")
    state = deal(seed)
    grid, pos = state.grid, state.pos
    count = 0
    while True:
        if is_won_grid(grid):
            status = Status.WON
            break
        moves = legal_moves(state)
        if not moves:
            status = Status.STUCK
            break
        if count >= move_cap:
            status = Status.CAPPED
            break
        move = choose_move(state, strategy, moves)
        a, b = move.mover_cell, move.target_cell
        grid[a], grid[b] = grid[b], grid[a]
        pos[grid[a]] = a
        pos[grid[b]] = b
        count += 1
    return PlayOutcome(strategy.value, seed, status.value, count, grid_hash(grid))


def game_seed(master_seed: int, index: int) -> int:
    """Per-game seed for trial `index`; independent of any batching."""
    return splitmix64_at(master_seed, index)


def wilson_interval(wins: int, trials: int, z: float = 1.959963984540054) -> tuple:
    """95% Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("need at least one trial")
    p = wins / trials
    z2 = z * z
    denom = 1 + z2 / trials
    center = (p + z2 / (2 * trials)) / denom
    half = z * ((p * (1 - p) / trials + z2 / (4 * trials * trials)) ** 0.5) / denom
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass
class WinRateReport:
    strategy: str
    trials: int
    wins: int
    rate: float
    ci: tuple
    cap: int
    seed: int

    def to_doc(self) -> dict:
        return {
            "strategy": self.strategy,
            "trials": self.trials,
            "wins": self.wins,
            "rate": self.rate,
            "ci": list(self.ci),
            "cap": self.cap,
            "seed": self.seed,
        }


def estimate_win_rate(
    strategy: Strategy,
    trials: int,
    seed: int = 0,
    cap: int = DEFAULT_MOVE_CAP,
    batch: int = 8192,
) -> WinRateReport:
    """Monte Carlo win rate over per-game seeds derived from (seed, index).

    Games are simulated by the vectorized batch engine; results are
    identical however the trials are split into batches, because every game
    draws only from its own seed's stream.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    wins = 0
    if strategy is Strategy.MAX_MOBILITY:
        # lookahead scoring is scalar-only; fine for the modest demo sample
        for i in range(trials):
            wins += play(strategy, game_seed(seed, i), cap).status == Status.WON.value
    else:
        from .simulate import simulate_games  # heavy import kept out of module load

        for start in range(0, trials, batch):
            seeds = [game_seed(seed, i) for i in range(start, min(start + batch, trials))]
            statuses, _moves = simulate_games(strategy, seeds, cap)
            wins += int((statuses == Status.WON.value).sum())
    return WinRateReport(
        strategy.value, trials, wins, wins / trials, wilson_interval(wins, trials), cap, seed
    )
