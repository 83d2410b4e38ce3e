"""Board model: cards, spots, layouts, and finite map witnesses.

A layout holds a deck of ``suit_count x ranks`` cards split between a board
(a partial map from spots to cards) and an undealt deck. Two dealing modes
exist:

* LONG  - every spot is filled, leftover cards wait in the deck;
* SHORT - every card is dealt, leftover spots stay empty and the deck is
  empty.

Witnesses are explicit finite maps certifying "injects into" / "bijects
onto" claims; every algorithm in this package returns its result as a
witness so that it can be re-checked independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Iterable, NamedTuple

from .errors import LayoutError, MalformedWitnessError, SwapConflictError


class Card(NamedTuple):
    suit: int
    rank: Hashable


class Spot(NamedTuple):
    rack: Hashable
    slot: int


class DeckLoc(NamedTuple):
    """The location of a named card that is still in the deck."""

    card: Card


Location = Spot | DeckLoc


class Mode(Enum):
    LONG = "long"
    SHORT = "short"


# ---------------------------------------------------------------------------
# Witnesses


@dataclass(frozen=True)
class InjectionWitness:
    """A total map claimed to be injective into its codomain."""

    domain: tuple
    codomain: tuple
    map: dict
    provenance: str | None = field(default=None, compare=False)

    def pairs(self) -> list:
        """Domain-ordered [element, image] pairs (the JSON wire form)."""
        return [[x, self.map[x]] for x in self.domain]


@dataclass(frozen=True)
class BijectionWitness(InjectionWitness):
    """A total map claimed to be a bijection onto its codomain."""


def _check_well_formed(w: InjectionWitness) -> set:
    missing = [x for x in w.domain if x not in w.map]
    if missing:
        raise MalformedWitnessError(f"witness not total on domain: missing {missing[:3]}")
    extra = set(w.map) - set(w.domain)
    if extra:
        raise MalformedWitnessError(f"witness maps elements outside domain: {sorted(map(repr, extra))[:3]}")
    codomain = set(w.codomain)
    outside = [x for x in w.domain if w.map[x] not in codomain]
    if outside:
        raise MalformedWitnessError(
            f"image of {outside[0]!r} is {w.map[outside[0]]!r}, not in codomain"
        )
    return codomain


def verify_injection(w: InjectionWitness) -> bool:
    """True iff the witness map is injective. Malformed witnesses raise."""
    _check_well_formed(w)
    return len({w.map[x] for x in w.domain}) == len(w.domain)


def verify_bijection(w: InjectionWitness) -> bool:
    """True iff the witness map is a bijection onto its codomain."""
    codomain = _check_well_formed(w)
    image = {w.map[x] for x in w.domain}
    return len(image) == len(w.domain) and image == codomain


# ---------------------------------------------------------------------------
# Layouts


@dataclass(frozen=True)
class Layout:
    suit_count: int
    racks: tuple
    ranks: tuple
    board: dict  # Spot -> Card, partial
    deck: frozenset  # Cards not on the board
    mode: Mode

    def spots(self) -> Iterable[Spot]:
        for rack in self.racks:
            for slot in range(self.suit_count):
                yield Spot(rack, slot)

    def all_cards(self) -> set:
        return {Card(s, r) for s in range(self.suit_count) for r in self.ranks}

    def validate(self) -> "Layout":
        n = self.suit_count
        if n < 1:
            raise LayoutError("suit_count must be >= 1")
        expected = self.all_cards()
        on_board = list(self.board.values())
        if len(set(on_board)) != len(on_board):
            raise LayoutError("a card occupies two spots")
        seen = set(on_board) | set(self.deck)
        if set(on_board) & set(self.deck):
            raise LayoutError("a card is both on the board and in the deck")
        if seen != expected:
            raise LayoutError("board + deck is not exactly the full card set")
        rack_set = set(self.racks)
        for spot in self.board:
            if spot.rack not in rack_set or not (0 <= spot.slot < n):
                raise LayoutError(f"board key {spot} is not a spot of this layout")
        if self.mode is Mode.LONG:
            if len(self.board) != n * len(self.racks):
                raise LayoutError("LONG layout must fill every spot")
        else:
            if self.deck:
                raise LayoutError("SHORT layout must deal every card")
        return self


def layout_from_injection(
    n: int,
    a_elems: Iterable,
    b_elems: Iterable,
    f: InjectionWitness,
    mode: Mode,
) -> Layout:
    """Deal a board from an injection on suit-tagged pairs.

    The witness maps pairs (suit, a) to pairs (suit, b). In LONG mode the
    domain pairs are read as spots (rack a, slot suit) and images as cards;
    in SHORT mode the domain pairs are the cards and images are spots.
    """
    a_elems = tuple(a_elems)
    b_elems = tuple(b_elems)
    if not verify_injection(f):
        raise MalformedWitnessError("dealing map is not injective")
    domain_pairs = {(i, a) for i in range(n) for a in a_elems}
    codomain_pairs = {(j, b) for j in range(n) for b in b_elems}
    if set(f.domain) != domain_pairs:
        raise LayoutError("witness domain is not the full (suit, A) pair set")
    if set(f.codomain) != codomain_pairs:
        raise LayoutError("witness codomain is not the full (suit, B) pair set")

    board: dict = {}
    if mode is Mode.LONG:
        racks, ranks = a_elems, b_elems
        for (i, a), (j, b) in f.map.items():
            board[Spot(a, i)] = Card(j, b)
        dealt = set(board.values())
        deck = frozenset(
            Card(j, b) for j in range(n) for b in b_elems if Card(j, b) not in dealt
        )
    else:
        racks, ranks = b_elems, a_elems
        for (i, a), (j, b) in f.map.items():
            spot = Spot(b, j)
            if spot in board:
                raise LayoutError(f"two cards dealt to {spot}")
            board[spot] = Card(i, a)
        deck = frozenset()
    return Layout(n, racks, ranks, board, deck, mode).validate()


def _content(layout: Layout, loc: Location) -> Card | None:
    if isinstance(loc, DeckLoc):
        if loc.card not in layout.deck:
            raise LayoutError(f"{loc.card} is not in the deck")
        return loc.card
    return layout.board.get(loc)


def apply_swaps(layout: Layout, swaps: Iterable[tuple]) -> Layout:
    """Exchange the contents of each location pair, all at once.

    The pairs must be pairwise disjoint: a location appearing in two pairs
    is a conflict, because simultaneous swaps must never compete for a spot.
    Pairing a spot with a DeckLoc exchanges a board card with a deck card.
    """
    swaps = list(swaps)
    seen: set = set()
    for pair in swaps:
        a, b = pair
        for loc in (a, b):
            if loc in seen:
                raise SwapConflictError(f"location {loc} appears in two swaps")
            seen.add(loc)
        if a == b:
            raise SwapConflictError(f"swap pairs {a} with itself")

    board = dict(layout.board)
    deck = set(layout.deck)
    for a, b in swaps:
        ca = _content(layout, a)
        cb = _content(layout, b)
        for loc, new in ((a, cb), (b, ca)):
            if isinstance(loc, DeckLoc):
                deck.discard(loc.card)
                if new is not None:
                    deck.add(new)
            else:
                if new is None:
                    board.pop(loc, None)
                else:
                    board[loc] = new
    return Layout(
        layout.suit_count, layout.racks, layout.ranks, board, frozenset(deck), layout.mode
    ).validate()


# ---------------------------------------------------------------------------
# Instance files
#
# {"n": int, "A": [str], "B": [str], "mode": "long"|"short",
#  "map": [[[suit, a], [suit, b]], ...]}


def instance_to_witness(doc: dict) -> tuple:
    """Parse an instance document into (n, A, B, witness, mode)."""
    try:
        n = int(doc["n"])
        a_elems = tuple(doc["A"])
        b_elems = tuple(doc["B"])
        mode = Mode(doc["mode"])
        raw_map = doc["map"]
    except (KeyError, ValueError, TypeError) as exc:
        raise MalformedWitnessError(f"bad instance document: {exc}") from exc
    mapping = {}
    for entry in raw_map:
        (i, a), (j, b) = entry
        mapping[(int(i), a)] = (int(j), b)
    domain = tuple((i, a) for i in range(n) for a in a_elems)
    codomain = tuple((j, b) for j in range(n) for b in b_elems)
    if set(mapping) != set(domain):
        raise MalformedWitnessError("instance map is not total on the (suit, A) pairs")
    witness = InjectionWitness(domain, codomain, mapping, provenance="instance file")
    return n, a_elems, b_elems, witness, mode


def witness_to_instance(n: int, a_elems, b_elems, f: InjectionWitness, mode: Mode) -> dict:
    return {
        "n": n,
        "A": list(a_elems),
        "B": list(b_elems),
        "mode": mode.value,
        "map": [[[i, a], list(f.map[(i, a)])] for (i, a) in f.domain],
    }


def load_instance(path) -> tuple:
    with open(path) as fh:
        return instance_to_witness(json.load(fh))
