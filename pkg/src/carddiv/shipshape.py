"""Lockstep round engine: Shape Up, Ship Out, Trim, and the trace renderer.

A suit-0 card ("spade") is *good* when it sits in slot 0 of some rack and
*bad* when it sits in any other slot. Rounds compute their whole swap set
from the pre-round state and apply it at once; the engine asserts the set
is conflict-free every round, which is the simultaneity guarantee the
construction rests on.

Swap accounting: every swap parks at least one card where no later round
of the same pass can touch it, so a pass performs at most
``suit_count * |racks|`` swaps (LONG) or ``suit_count * |ranks|`` (SHORT).
The engine enforces that bound as a watchdog so any non-termination bug
fails loudly instead of spinning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple

from .core import Card, DeckLoc, Layout, Location, Mode, Spot
from .errors import ContractViolationError, LayoutError, RenderError, SwapConflictError

START = "start"


class RoundKind(str, Enum):
    SHAPE_UP = "shape_up"
    SHIP_OUT = "ship_out"
    TRIM = "trim"


class ShipOutPolicy(str, Enum):
    ALL_BAD = "all_bad"
    LEFTMOST_ONLY = "leftmost_only"


class SwapRecord(NamedTuple):
    """One applied exchange: the two locations and their pre-swap contents."""

    loc_a: Location
    loc_b: Location
    card_a: Card | None
    card_b: Card | None


class ChipMove(NamedTuple):
    chip: object  # chip id == home rank of the suit-0 card it represents
    src: Spot
    dst: Spot


@dataclass(frozen=True)
class TraceEntry:
    kind: str  # START or a RoundKind value
    state: Layout | None  # snapshot after this entry's swaps, if captured
    swaps: tuple = ()
    chip_moves: tuple = ()


@dataclass
class RoundTrace:
    entries: list = field(default_factory=list)
    rounds_executed: int = 0
    noop_rounds: int = 0
    total_swaps: int = 0
    conflicts_skipped: int = 0

    def per_round_swaps(self) -> list:
        return [len(e.swaps) for e in self.entries if e.kind != START]

    def labels(self) -> list:
        return [e.kind for e in self.entries]


# ---------------------------------------------------------------------------
# Mutable working board. The engine owns it exclusively while a run is in
# progress; snapshots handed out are immutable Layouts.


class _Board:
    __slots__ = ("n", "racks", "ranks", "mode", "at", "pos", "deck", "bad", "rack_index")

    def __init__(self, layout: Layout):
        self.n = layout.suit_count
        self.racks = layout.racks
        self.ranks = layout.ranks
        self.mode = layout.mode
        self.at = dict(layout.board)
        self.deck = set(layout.deck)
        self.pos = {card: spot for spot, card in self.at.items()}
        for card in self.deck:
            self.pos[card] = DeckLoc(card)
        self.rack_index = {rack: i for i, rack in enumerate(layout.racks)}
        self.bad = {c for c, p in self.pos.items() if c.suit == 0 and isinstance(p, Spot) and p.slot != 0}

    def snapshot(self) -> Layout:
        return Layout(self.n, self.racks, self.ranks, dict(self.at), frozenset(self.deck), self.mode)

    def card_at(self, spot: Spot) -> Card | None:
        return self.at.get(spot)

    def bad_spades(self) -> list:
        """Bad spades with their spots, ordered by (rack, slot)."""
        found = [(self.pos[c], c) for c in self.bad]
        found.sort(key=lambda item: (self.rack_index[item[0].rack], item[0].slot))
        return found

    def _take(self, loc: Location) -> Card | None:
        if isinstance(loc, DeckLoc):
            self.deck.discard(loc.card)
            return loc.card
        card = self.at.pop(loc, None)
        if card is not None and card.suit == 0:
            self.bad.discard(card)
        return card

    def _put(self, loc: Location, card: Card | None) -> None:
        if card is None:
            return
        if isinstance(loc, DeckLoc):
            self.deck.add(card)
            self.pos[card] = DeckLoc(card)
            return
        self.at[loc] = card
        self.pos[card] = loc
        if card.suit == 0 and loc.slot != 0:
            self.bad.add(card)

    def apply(self, pairs: Iterable[tuple]) -> list:
        pairs = list(pairs)
        seen: set = set()
        for a, b in pairs:
            if a == b or a in seen or b in seen:
                raise SwapConflictError(f"conflicting simultaneous swaps at {a} / {b}")
            seen.add(a)
            seen.add(b)
        records = []
        contents = [(self._take(a), self._take(b)) for a, b in pairs]
        for (a, b), (ca, cb) in zip(pairs, contents):
            self._put(a, cb)
            self._put(b, ca)
            records.append(SwapRecord(a, b, ca, cb))
        return records


# ---------------------------------------------------------------------------
# Round rules. Each computes its swap set purely from the given state; the
# same functions serve the public Layout API and the engine's internal loop.


def _shape_up(board: _Board) -> list:
    by_rack: dict = {}
    for spot, card in board.bad_spades():
        by_rack.setdefault(spot.rack, []).append(spot)
    swaps = []
    for rack in sorted(by_rack, key=board.rack_index.get):
        home = Spot(rack, 0)
        holder = board.card_at(home)
        if holder is not None and holder.suit == 0:
            continue  # rack already has a good spade
        leftmost = min(by_rack[rack], key=lambda s: s.slot)
        swaps.append((leftmost, home))
    return swaps


def _ship_out(board: _Board, policy: ShipOutPolicy) -> list:
    by_rack: dict = {}
    for spot, card in board.bad_spades():
        by_rack.setdefault(spot.rack, []).append(spot)
    swaps = []
    for rack in sorted(by_rack, key=board.rack_index.get):
        spots = by_rack[rack]
        if policy is ShipOutPolicy.LEFTMOST_ONLY:
            spots = [min(spots, key=lambda s: s.slot)]
        holder = board.card_at(Spot(rack, 0))
        if holder is None or holder.suit != 0:
            raise ContractViolationError(
                f"rack {rack!r} has a bad spade to ship out but no good spade"
            )
        for spot in sorted(spots, key=lambda s: s.slot):
            target = Card(spot.slot, holder.rank)
            swaps.append((spot, board.pos[target]))
    return swaps


def shape_up_round(layout: Layout) -> list:
    """Swap set of one Shape Up round on the given state (pure)."""
    return _shape_up(_Board(layout))


def ship_out_round(layout: Layout, policy: ShipOutPolicy = ShipOutPolicy.ALL_BAD) -> list:
    """Swap set of one Ship Out round on the given state (pure)."""
    return _ship_out(_Board(layout), policy)


def swap_budget(layout: Layout) -> int:
    per = len(layout.racks) if layout.mode is Mode.LONG else len(layout.ranks)
    return layout.suit_count * per


def run_pass(
    layout: Layout,
    policy: ShipOutPolicy = ShipOutPolicy.ALL_BAD,
    capture_states: bool = True,
) -> tuple:
    """Alternate Shape Up / Ship Out until no bad spade remains.

    Rounds that perform no swap are executed and counted but left out of
    the trace, which is why a rendered trace can show two Ship Out blocks
    in a row. Returns (final layout, trace).
    """
    board = _Board(layout)
    budget = swap_budget(layout)
    trace = RoundTrace()
    trace.entries.append(TraceEntry(START, board.snapshot() if capture_states else None))
    kind = RoundKind.SHAPE_UP
    idle = 0
    while board.bad:
        swaps = _shape_up(board) if kind is RoundKind.SHAPE_UP else _ship_out(board, policy)
        trace.rounds_executed += 1
        if swaps:
            idle = 0
            records = board.apply(swaps)
            trace.total_swaps += len(swaps)
            if trace.total_swaps > budget:
                raise ContractViolationError(
                    f"swap budget {budget} exceeded after {trace.rounds_executed} rounds; "
                    f"{len(board.bad)} bad spades remain"
                )
            trace.entries.append(
                TraceEntry(kind.value, board.snapshot() if capture_states else None, tuple(records))
            )
        else:
            idle += 1
            trace.noop_rounds += 1
            if idle >= 2:
                raise ContractViolationError(
                    "neither round can act but bad spades remain; state is corrupt"
                )
        kind = RoundKind.SHIP_OUT if kind is RoundKind.SHAPE_UP else RoundKind.SHAPE_UP
    return board.snapshot(), trace


def good_spades(layout: Layout) -> list:
    """(rack, rank) pairs for every suit-0 card sitting in slot 0."""
    out = []
    for rack in layout.racks:
        card = layout.board.get(Spot(rack, 0))
        if card is not None and card.suit == 0:
            out.append((rack, card.rank))
    return out


# ---------------------------------------------------------------------------
# Chipshaping: chips represent their spades through Shape Up / Ship Out,
# and Trim rounds drag mis-set cards to their stations.


@dataclass
class ChipState:
    """Chip id -> current spot. A chip's id is its spade's rank, which is
    also its home rank. At most one chip sits on any spot."""

    spots: dict

    def validate(self) -> "ChipState":
        taken = list(self.spots.values())
        if len(set(taken)) != len(taken):
            raise LayoutError("two chips share a location")
        return self

    def chip_at(self, spot: Spot):
        for chip, where in self.spots.items():
            if where == spot:
                return chip
        return None


def _chips_by_rack(chips: ChipState, rack_index: dict) -> dict:
    by_rack: dict = {}
    for chip in sorted(chips.spots, key=lambda c: (rack_index[chips.spots[c].rack], chips.spots[c].slot)):
        by_rack.setdefault(chips.spots[chip].rack, []).append(chip)
    return by_rack


def trim_round(layout: Layout, chips: ChipState) -> list:
    """Swap set for one Trim round (pure).

    A chipped card left of its suit's slot is sent to that slot in the rack
    whose slot 0 shows the spade of the card's rank under a chip; the chip
    itself stays put. When two qualifying trims touch the same spot, the one
    whose chip sits in the leftmost rack wins and the rest wait for a later
    round.
    """
    rack_index = {rack: i for i, rack in enumerate(layout.racks)}
    chip_spots = set(chips.spots.values())
    # racks whose slot 0 holds a chipped spade, by that spade's rank
    spade_home: dict = {}
    for rack in layout.racks:
        home = Spot(rack, 0)
        card = layout.board.get(home)
        if card is not None and card.suit == 0 and home in chip_spots:
            spade_home[card.rank] = rack
    swaps = []
    used: set = set()
    ordered = sorted(chips.spots.values(), key=lambda s: (rack_index[s.rack], s.slot))
    for spot in ordered:
        card = layout.board.get(spot)
        if card is None or spot.slot >= card.suit:
            continue  # no card, or not above its station
        rack = spade_home.get(card.rank)
        if rack is None:
            continue  # rule inapplicable this round
        station = Spot(rack, card.suit)
        if spot in used or station in used or station == spot:
            continue  # conflict: resolved in favor of the leftmost rack
        used.add(spot)
        used.add(station)
        swaps.append((spot, station))
    return swaps


def _chip_shape_up(board: _Board, chips: ChipState) -> tuple:
    """Card swaps and chip moves for a chip-driven Shape Up round."""
    by_rack = _chips_by_rack(chips, board.rack_index)
    swaps = []
    moves = []
    for rack, rack_chips in by_rack.items():
        slots = {chips.spots[c].slot: c for c in rack_chips}
        if 0 in slots:
            continue  # good chip present
        slot = min(slots)
        chip = slots[slot]
        src = Spot(rack, slot)
        dst = Spot(rack, 0)
        swaps.append((src, dst))
        moves.append(ChipMove(chip, src, dst))
    return swaps, moves


def _chip_ship_out(board: _Board, chips: ChipState) -> tuple:
    """Chip relocations for a chip-driven Ship Out round (no card moves).

    A destination already holding a chip that is not itself departing is a
    contention the stated rules do not order; the leftmost-rack chip goes,
    later ones wait.
    """
    by_rack = _chips_by_rack(chips, board.rack_index)
    wanted = []
    for rack, rack_chips in by_rack.items():
        slots = {chips.spots[c].slot: c for c in rack_chips}
        good = slots.get(0)
        bad_slots = sorted(s for s in slots if s != 0)
        if not bad_slots:
            continue
        if good is None:
            raise ContractViolationError(
                f"rack {rack!r} has a bad chip to ship out but no good chip"
            )
        for slot in bad_slots:
            target = Card(slot, good)
            dst = board.pos[target]
            if not isinstance(dst, Spot):
                raise ContractViolationError(f"ship-out target {target} is not on the board")
            wanted.append(ChipMove(slots[slot], Spot(rack, slot), dst))
    departing = {m.src for m in wanted}
    stationary = set(chips.spots.values()) - departing
    moves = []
    taken: set = set()
    skipped = 0
    for move in wanted:
        if move.dst in stationary or move.dst in taken:
            skipped += 1
            continue
        taken.add(move.dst)
        moves.append(move)
    return moves, skipped


def run_chipshape(layout: Layout, capture_states: bool = True) -> tuple:
    """Run the chip-marked variant to quiescence.

    Schedule: Shape Up, Ship Out, then Trim repeated until no trim applies;
    repeat the cycle until a whole cycle does nothing. Returns
    (final layout, chip state, trace).
    """
    if layout.deck:
        raise LayoutError("chipshaping expects an all-dealt layout")
    board = _Board(layout)
    chips = ChipState(
        {card.rank: spot for spot, card in board.at.items() if card.suit == 0}
    ).validate()
    trace = RoundTrace()
    trace.entries.append(TraceEntry(START, board.snapshot() if capture_states else None))
    budget = 8 * layout.suit_count * max(len(layout.racks), len(layout.ranks)) + 64
    actions = 0
    while True:
        cycle_actions = 0

        swaps, moves = _chip_shape_up(board, chips)
        trace.rounds_executed += 1
        if swaps:
            records = board.apply(swaps)
            for move in moves:
                chips.spots[move.chip] = move.dst
            chips.validate()
            cycle_actions += len(swaps)
            trace.total_swaps += len(swaps)
            trace.entries.append(
                TraceEntry(
                    RoundKind.SHAPE_UP.value,
                    board.snapshot() if capture_states else None,
                    tuple(records),
                    tuple(moves),
                )
            )
        else:
            trace.noop_rounds += 1

        moves, skipped = _chip_ship_out(board, chips)
        trace.rounds_executed += 1
        trace.conflicts_skipped += skipped
        if moves:
            for move in moves:
                chips.spots[move.chip] = move.dst
            chips.validate()
            cycle_actions += len(moves)
            trace.entries.append(
                TraceEntry(
                    RoundKind.SHIP_OUT.value,
                    board.snapshot() if capture_states else None,
                    (),
                    tuple(moves),
                )
            )
        else:
            trace.noop_rounds += 1

        # Every trim round parks at least one card on its true station for
        # good, so a block can never outlast the card count; anything past
        # that is a real bug. (Blocks do run longer than the ship-out round
        # count on some seeds: a trim can push a fresh above-station card
        # under a chip, feeding the next round.)
        trim_limit = layout.suit_count * len(layout.ranks) + 8
        trim_count = 0
        while True:
            swaps = trim_round(board.snapshot(), chips)
            trace.rounds_executed += 1
            if not swaps:
                trace.noop_rounds += 1
                break
            trim_count += 1
            if trim_count > trim_limit:
                raise ContractViolationError(
                    f"trim block exceeded {trim_limit} rounds; engine is not settling"
                )
            records = board.apply(swaps)
            cycle_actions += len(swaps)
            trace.total_swaps += len(swaps)
            trace.entries.append(
                TraceEntry(RoundKind.TRIM.value, board.snapshot() if capture_states else None, tuple(records))
            )

        actions += cycle_actions
        if cycle_actions == 0:
            break
        if actions > budget:
            raise ContractViolationError(
                f"chipshape action budget {budget} exceeded; engine is not settling"
            )
    return board.snapshot(), chips, trace


def chip_assignment(chips: ChipState) -> dict:
    """home rank -> rack, for every chip sitting in a slot-0 spot."""
    return {chip: spot.rack for chip, spot in chips.spots.items() if spot.slot == 0}


# ---------------------------------------------------------------------------
# Trace rendering


_SUIT_CHARS = "shgc"

_LABELS = {
    START: "Start:",
    RoundKind.SHAPE_UP.value: "Shape up:",
    RoundKind.SHIP_OUT.value: "Ship out:",
    RoundKind.TRIM.value: "Trim:",
}


def _suit_char(suit: int, n: int) -> str:
    if n <= 4:
        return _SUIT_CHARS[suit]
    if n <= 10:
        return str(suit)
    raise RenderError(f"no single-character suit names for {n} suits")


def _cell(card: Card | None, n: int, barred: set) -> str:
    if card is None:
        return "    "
    rank = str(card.rank)
    if len(rank) != 1:
        raise RenderError(f"rank {card.rank!r} does not fit the single-character card format")
    body = rank + _suit_char(card.suit, n)
    if card.suit == 0:
        return f"*{body}*"
    if card in barred:
        return f"|{body}|"
    return f" {body} "


def render_trace(trace: RoundTrace) -> str:
    """Render a captured trace in the fixed-width text format.

    Every block is a label line followed by one row per slot (top row is
    the spades slot), cells four characters wide joined by two spaces.
    Spades are starred; a card that has ever been the non-spade half of a
    Ship Out swap is barred from that block on.
    """
    barred: set = set()
    blocks = []
    for entry in trace.entries:
        state = entry.state
        if state is None:
            raise RenderError("trace was recorded without state snapshots")
        if entry.kind == RoundKind.SHIP_OUT.value:
            for rec in entry.swaps:
                for card in (rec.card_a, rec.card_b):
                    if card is not None and card.suit != 0:
                        barred.add(card)
        lines = [_LABELS[entry.kind]]
        for slot in range(state.suit_count):
            cells = [
                _cell(state.board.get(Spot(rack, slot)), state.suit_count, barred)
                for rack in state.racks
            ]
            lines.append("  ".join(cells))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
