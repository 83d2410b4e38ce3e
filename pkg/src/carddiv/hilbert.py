"""Pointwise-computable swallowing on finitely-described countable sets.

A chain is an infinite injective sequence of (suit, natural-rank) cards,
represented as a finite prefix followed by a single arithmetic tail. That
restricted shape keeps every question the construction needs exactly
decidable: membership, pairwise disjointness, the suit visited infinitely
often, and the trimmed rank progression. Families of pairwise-disjoint
chains then give a Hilbert-Hotel style injection that hides one extra
element per chain inside the naturals, evaluated pointwise so the infinite
set is never materialized.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ChainError
from .laws import TaggedElement


class ChainCard(NamedTuple):
    suit: int
    rank: int


class RankProgression(NamedTuple):
    """The arithmetic progression start, start+stride, start+2*stride, ..."""

    start: int
    stride: int

    def contains(self, rank: int) -> bool:
        return rank >= self.start and (rank - self.start) % self.stride == 0

    def value_at(self, k: int) -> int:
        return self.start + k * self.stride


@dataclass(frozen=True)
class ArithChain:
    prefix: tuple  # ChainCards, the finite irregular head
    tail_suit: int
    tail_start: int
    tail_stride: int

    def __post_init__(self):
        prefix = tuple(ChainCard(int(s), int(r)) for s, r in self.prefix)
        object.__setattr__(self, "prefix", prefix)
        if self.tail_stride < 1:
            raise ChainError("tail stride must be >= 1")
        if self.tail_start < 0 or any(c.rank < 0 for c in prefix):
            raise ChainError("ranks are naturals")
        if len(set(prefix)) != len(prefix):
            raise ChainError("prefix repeats a card")
        tail = RankProgression(self.tail_start, self.tail_stride)
        for card in prefix:
            if card.suit == self.tail_suit and tail.contains(card.rank):
                raise ChainError(f"prefix card {card} collides with the tail")

    def entry(self, k: int) -> ChainCard:
        if k < len(self.prefix):
            return self.prefix[k]
        return ChainCard(self.tail_suit, self.tail_start + (k - len(self.prefix)) * self.tail_stride)

    def tail(self) -> RankProgression:
        return RankProgression(self.tail_start, self.tail_stride)

    def contains(self, card: ChainCard) -> bool:
        if card in self.prefix:
            return True
        return card.suit == self.tail_suit and self.tail().contains(card.rank)

    def max_suit(self) -> int:
        return max([self.tail_suit] + [c.suit for c in self.prefix])


def limiting_suit(chain: ArithChain) -> int:
    """The one suit a chain visits infinitely often: its tail suit."""
    return chain.tail_suit


def trim(chain: ArithChain) -> RankProgression:
    """The rank progression of the tail entries past all other-suit cards.

    Every tail entry already comes after the whole prefix, so under this
    representation the restriction is vacuous and the trimmed sequence is
    the full tail progression; prefix cards never contribute to it.
    """
    return chain.tail()


def _tails_intersect(a: ArithChain, b: ArithChain) -> bool:
    if a.tail_suit != b.tail_suit:
        return False
    g = math.gcd(a.tail_stride, b.tail_stride)
    # Common residues mod lcm recur forever, so compatibility alone decides.
    return (b.tail_start - a.tail_start) % g == 0


def chains_disjoint(a: ArithChain, b: ArithChain) -> bool:
    if any(b.contains(card) for card in a.prefix):
        return False
    if any(a.contains(card) for card in b.prefix):
        return False
    return not _tails_intersect(a, b)


@dataclass
class ChainFamily:
    """One chain per tag, all drawing cards from suit_count x naturals."""

    suit_count: int
    chains: dict  # tag -> ArithChain
    _disjoint: bool | None = None

    def __post_init__(self):
        for tag, chain in self.chains.items():
            if chain.max_suit() >= self.suit_count:
                raise ChainError(f"chain {tag!r} uses a suit >= {self.suit_count}")

    def tags(self) -> tuple:
        return tuple(self.chains)


def verify_disjoint(family: ChainFamily) -> bool:
    """Exact pairwise disjointness of the family's chains as card sets."""
    if family._disjoint is None:
        tags = family.tags()
        family._disjoint = all(
            chains_disjoint(family.chains[t1], family.chains[t2])
            for i, t1 in enumerate(tags)
            for t2 in tags[i + 1 :]
        )
    return family._disjoint


def a_elem(tag) -> TaggedElement:
    return TaggedElement("A", tag)


def c_elem(rank: int) -> TaggedElement:
    return TaggedElement("C", int(rank))


def swallow_map(family: ChainFamily, x: TaggedElement) -> int:
    """Evaluate the composed hiding injection from A + C into C at one point.

    Suit classes are processed in order 0..n-1. Within class i, the tagged
    element of a class-i chain enters at its trimmed progression's first
    rank, ranks already on a class-i progression shift one step along it,
    and everything else passes through untouched. Elements on no trimmed
    progression are fixed points.
    """
    if not verify_disjoint(family):
        raise ChainError("swallow_map needs a pairwise-disjoint family")
    if x.tag == "A":
        if x.payload not in family.chains:
            raise ChainError(f"unknown chain tag {x.payload!r}")
    elif x.tag != "C":
        raise ChainError(f"swallow_map takes A- or C-tagged elements, not {x.tag!r}")

    by_suit: dict = {}
    for tag, chain in family.chains.items():
        by_suit.setdefault(chain.tail_suit, []).append((tag, trim(chain)))

    pending_tag = x.payload if x.tag == "A" else None
    value = int(x.payload) if x.tag == "C" else -1
    for suit in range(family.suit_count):
        if pending_tag is not None:
            chain = family.chains[pending_tag]
            if chain.tail_suit == suit:
                value = trim(chain).start
                pending_tag = None
            continue
        for _tag, prog in by_suit.get(suit, ()):
            if prog.contains(value):
                value += prog.stride
                break
    if pending_tag is not None:
        raise ChainError("element never entered the naturals")  # unreachable
    return value


# ---------------------------------------------------------------------------
# File format:
# {"n": int, "chains": {tag: {"prefix": [[suit, rank], ...],
#                             "tail": [suit, start, stride]}}}


def family_to_doc(family: ChainFamily) -> dict:
    return {
        "n": family.suit_count,
        "chains": {
            str(tag): {
                "prefix": [[c.suit, c.rank] for c in chain.prefix],
                "tail": [chain.tail_suit, chain.tail_start, chain.tail_stride],
            }
            for tag, chain in family.chains.items()
        },
    }


def family_from_doc(doc: dict) -> ChainFamily:
    try:
        n = int(doc["n"])
        raw = doc["chains"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ChainError(f"bad chain family document: {exc}") from exc
    chains = {}
    for tag, spec in raw.items():
        suit, start, stride = spec["tail"]
        chains[tag] = ArithChain(
            tuple((int(s), int(r)) for s, r in spec.get("prefix", [])),
            int(suit),
            int(start),
            int(stride),
        )
    return ChainFamily(n, chains)


def load_family(path) -> ChainFamily:
    with open(path) as fh:
        return family_from_doc(json.load(fh))
