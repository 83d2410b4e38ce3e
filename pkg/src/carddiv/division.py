"""Long and Short Division of injections, with pass scheduling and metrics.

Long Division repeatedly runs full passes of the round engine, peeling off
one suit (or, grouped, a 1/k fraction of the suits) per pass until a single
suit is left; that suit's cards read off an injection from racks to ranks.
Short Division reverses the roles of the two sets, deals every card, and
needs exactly one pass: the settled spades read off the injection directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import (
    BijectionWitness,
    Card,
    InjectionWitness,
    Layout,
    Mode,
    Spot,
    layout_from_injection,
    verify_bijection,
)
from .errors import ContractViolationError, InvalidWitnessError, ScheduleError
from .shipshape import RoundTrace, ShipOutPolicy, run_pass


# ---------------------------------------------------------------------------
# Schedules


@dataclass(frozen=True)
class Schedule:
    """How Long Division picks the group size k for each pass.

    naive    - k = m every pass (plain one-suit elimination, m-1 passes)
    halving  - k = 2 whenever the suit count is even, else a plain pass
    factors  - an explicit list of k values, each dividing the suit count
               it meets; the sequence must reduce the count to exactly 1
    """

    kind: str
    ks: tuple = ()

    @staticmethod
    def naive() -> "Schedule":
        return Schedule("naive")

    @staticmethod
    def halving() -> "Schedule":
        return Schedule("halving")

    @staticmethod
    def factors(ks) -> "Schedule":
        return Schedule("factors", tuple(int(k) for k in ks))

    @staticmethod
    def parse(text: str) -> "Schedule":
        text = text.strip().lower()
        if text == "naive":
            return Schedule.naive()
        if text == "halving":
            return Schedule.halving()
        return Schedule.factors(int(part) for part in text.split(","))

    def plan(self, n: int) -> list:
        """The k for every pass, validated against the starting suit count."""
        if n < 1:
            raise ScheduleError("suit count must be >= 1")
        ks = []
        m = n
        if self.kind == "naive":
            while m > 1:
                ks.append(m)
                m -= 1
        elif self.kind == "halving":
            while m > 1:
                k = 2 if m % 2 == 0 else m
                ks.append(k)
                m = m * (k - 1) // k
        elif self.kind == "factors":
            for k in self.ks:
                if k < 2 or m % k != 0:
                    raise ScheduleError(f"factor {k} does not divide suit count {m}")
                ks.append(k)
                m = m * (k - 1) // k
            if m != 1:
                raise ScheduleError(f"schedule leaves {m} suits, does not reduce to 1")
        else:
            raise ScheduleError(f"unknown schedule kind {self.kind!r}")
        return ks


# ---------------------------------------------------------------------------
# Pass plumbing: projection after a pass, grouping for k-fold passes


def _project(layout: Layout) -> Layout:
    """Drop slot 0 and suit 0 once a pass has settled every spade.

    Suit-0 cards leave the game with their suit. A non-suit-0 card that was
    parked in a slot 0 loses its spot and goes back to the deck: the next
    pass sees it as undealt.
    """
    n = layout.suit_count - 1
    board = {}
    undealt = []
    for spot, card in layout.board.items():
        if spot.slot == 0:
            if card.suit != 0:
                undealt.append(Card(card.suit - 1, card.rank))
            continue
        if card.suit == 0:
            raise ContractViolationError(f"suit-0 card {card} still right of slot 0")
        board[Spot(spot.rack, spot.slot - 1)] = Card(card.suit - 1, card.rank)
    deck = frozenset(
        [Card(c.suit - 1, c.rank) for c in layout.deck if c.suit != 0] + undealt
    )
    return Layout(n, layout.racks, layout.ranks, board, deck, layout.mode).validate()


def _group(layout: Layout, k: int) -> Layout:
    """Regroup m suits as k super-suits over (m/k)-fold rack and rank sets.

    Super-suit j holds original suits [j*m/k, (j+1)*m/k); sub-index i of a
    suit becomes the first component of the wrapped rack / rank identifier.
    """
    m = layout.suit_count
    sub = m // k
    racks = tuple((i, a) for i in range(sub) for a in layout.racks)
    ranks = tuple((i, b) for i in range(sub) for b in layout.ranks)
    board = {
        Spot((spot.slot % sub, spot.rack), spot.slot // sub): Card(
            card.suit // sub, (card.suit % sub, card.rank)
        )
        for spot, card in layout.board.items()
    }
    deck = frozenset(Card(c.suit // sub, (c.suit % sub, c.rank)) for c in layout.deck)
    # pure relabeling of a validated layout; invariants carry over
    return Layout(k, racks, ranks, board, deck, layout.mode)


def _ungroup(layout: Layout, sub: int, racks: tuple, ranks: tuple) -> Layout:
    """Flatten a projected super-suit board back to ordinary suits."""
    board = {}
    for spot, card in layout.board.items():
        i, a = spot.rack
        i2, b = card.rank
        board[Spot(a, spot.slot * sub + i)] = Card(card.suit * sub + i2, b)
    deck = frozenset(Card(c.suit * sub + c.rank[0], c.rank[1]) for c in layout.deck)
    return Layout(layout.suit_count * sub, racks, ranks, board, deck, layout.mode)


def reduce_pass_grouped(
    layout: Layout,
    k: int,
    policy: ShipOutPolicy = ShipOutPolicy.ALL_BAD,
    capture_states: bool = False,
) -> tuple:
    """One grouped pass: m suits in, m(k-1)/k suits out.

    k = m is exactly a plain pass. Returns (reduced layout, pass trace).
    """
    m = layout.suit_count
    if layout.mode is not Mode.LONG:
        raise ScheduleError("grouped passes run on LONG layouts only")
    if k < 2 or m % k != 0:
        raise ScheduleError(f"group size {k} does not divide suit count {m}")
    sub = m // k
    if sub == 1:
        settled, trace = run_pass(layout, policy, capture_states=capture_states)
        return _project(settled), trace
    grouped = _group(layout, k)
    settled, trace = run_pass(grouped, policy, capture_states=capture_states)
    reduced = _ungroup(_project(settled), sub, layout.racks, layout.ranks)
    return reduced, trace


# ---------------------------------------------------------------------------
# Reports


@dataclass
class DivisionReport:
    passes: int
    total_swaps: int
    per_pass: list
    result: InjectionWitness

    def to_doc(self) -> dict:
        return {
            "passes": self.passes,
            "total_swaps": self.total_swaps,
            "per_pass": list(self.per_pass),
            "result": self.result.pairs(),
        }


@dataclass
class ShortDivisionOutcome:
    result: InjectionWitness  # ranks -> racks
    good_set: tuple  # racks that received a settled spade
    bad_ranks: tuple  # always empty for finite inputs; recorded anyway
    total_swaps: int
    rounds: int

    def to_doc(self) -> dict:
        return {
            "passes": 1,
            "total_swaps": self.total_swaps,
            "per_pass": [self.total_swaps],
            "result": self.result.pairs(),
        }


# ---------------------------------------------------------------------------
# Division proper


def _read_single_suit(layout: Layout, a_elems: tuple, b_elems: tuple) -> InjectionWitness:
    if layout.suit_count != 1:
        raise ContractViolationError("result read-off needs a single-suit layout")
    mapping = {}
    for a in layout.racks:
        card = layout.board.get(Spot(a, 0))
        if card is None:
            raise ContractViolationError(f"rack {a!r} has no card to read off")
        mapping[a] = card.rank
    return InjectionWitness(tuple(a_elems), tuple(b_elems), mapping)


def long_divide(
    n: int,
    a_elems,
    b_elems,
    f: InjectionWitness,
    schedule: Schedule = Schedule.naive(),
    policy: ShipOutPolicy = ShipOutPolicy.ALL_BAD,
) -> DivisionReport:
    """Divide an injection on (suit, element) pairs by the suit count n.

    Deterministic given (schedule, policy); the report carries per-pass swap
    counts so the pass bounds can be checked from the outside.
    """
    a_elems = tuple(a_elems)
    b_elems = tuple(b_elems)
    ks = schedule.plan(n)
    layout = layout_from_injection(n, a_elems, b_elems, f, Mode.LONG)
    per_pass = []
    for k in ks:
        layout, trace = reduce_pass_grouped(layout, k, policy)
        per_pass.append(trace.total_swaps)
    result = _read_single_suit(layout, a_elems, b_elems)
    result = InjectionWitness(
        result.domain,
        result.codomain,
        result.map,
        provenance=f"long_divide(n={n}, schedule={schedule.kind}, policy={policy.value})",
    )
    return DivisionReport(len(ks), sum(per_pass), per_pass, result)


def short_divide(
    n: int,
    a_elems,
    b_elems,
    f: InjectionWitness,
    policy: ShipOutPolicy = ShipOutPolicy.ALL_BAD,
) -> ShortDivisionOutcome:
    """Divide by dealing all cards into the B-side racks: one pass total.

    For finite inputs every spade settles, so the result is total on A and
    the recorded bad-rank set is empty.
    """
    a_elems = tuple(a_elems)
    b_elems = tuple(b_elems)
    layout = layout_from_injection(n, a_elems, b_elems, f, Mode.SHORT)
    settled, trace = run_pass(layout, policy, capture_states=False)
    mapping = {}
    for rack in settled.racks:
        card = settled.board.get(Spot(rack, 0))
        if card is not None and card.suit == 0:
            mapping[card.rank] = rack
    missing = [a for a in a_elems if a not in mapping]
    if missing:
        raise ContractViolationError(f"spades never settled for ranks {missing[:3]}")
    result = InjectionWitness(
        a_elems, b_elems, mapping, provenance=f"short_divide(n={n}, policy={policy.value})"
    )
    good_set = tuple(mapping[a] for a in a_elems)
    return ShortDivisionOutcome(result, good_set, (), trace.total_swaps, trace.rounds_executed)


# Division method flags for divide_bijection; plain strings keep the CLI thin.
LONG = "long"
SHORT = "short"


def divide_bijection(
    n: int,
    a_elems,
    b_elems,
    big: BijectionWitness,
    method: str = SHORT,
    schedule: Schedule = Schedule.halving(),
    policy: ShipOutPolicy = ShipOutPolicy.ALL_BAD,
) -> BijectionWitness:
    """Divide a bijection on (suit, element) pairs, keeping bijectivity.

    Runs division on the map and on its inverse, then welds the two
    injections together with the give-forward pairing construction.
    """
    from .laws import CbVariant, cb_combine  # deferred: laws builds on this module

    if not verify_bijection(big):
        raise InvalidWitnessError("divide_bijection needs a bijective witness")
    a_elems = tuple(a_elems)
    b_elems = tuple(b_elems)
    inverse = BijectionWitness(
        big.codomain, big.domain, {v: k for k, v in big.map.items()}, provenance="inverse"
    )
    if method == LONG:
        fwd = long_divide(n, a_elems, b_elems, big, schedule, policy).result
        back = long_divide(n, b_elems, a_elems, inverse, schedule, policy).result
    elif method == SHORT:
        fwd = short_divide(n, a_elems, b_elems, big, policy).result
        back = short_divide(n, b_elems, a_elems, inverse, policy).result
    else:
        raise ScheduleError(f"unknown division method {method!r}")
    combined = cb_combine(fwd, back, CbVariant.GIVE_FORWARD)
    return BijectionWitness(
        combined.domain,
        combined.codomain,
        combined.map,
        provenance=f"divide_bijection(n={n}, method={method})",
    )


def halving_pass_bound(n: int) -> int:
    """Pass-count ceiling for the halving schedule: 2 * ceil(log2 n)."""
    return 2 * math.ceil(math.log2(n)) if n > 1 else 0
