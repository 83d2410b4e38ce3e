"""The bundled 40-card demonstration deal behind the golden trace.

Four suits, ten racks, ten ranks, every card dealt. Running a full pass on
this deal and rendering the trace must reproduce ``golden/section1.trace``
byte for byte; the `golden` CLI subcommand and the acceptance suite both
check exactly that.
"""

from __future__ import annotations

from .core import InjectionWitness, Layout, Mode, layout_from_injection

SUIT_OF_CHAR = {"s": 0, "h": 1, "g": 2, "c": 3}

RACKS = tuple(str(i) for i in range(1, 11))
RANKS = ("4", "5", "6", "8", "9", "T", "J", "Q", "K", "A")

# Rows top to bottom are the spades, hearts, gems, clubs slots.
_START_ROWS = (
    "4g 6h Qg 8g 9h Qs 4c Ag 6c 4s",
    "Jh Ah 9c 8h As Tc Tg 5h Qc Js",
    "Kc 6s 4h 6g Ts 9s Jc Kg 8s 8c",
    "5c 5g Ks 5s Th Jg Ac Qh 9g Kh",
)


def worked_witness() -> InjectionWitness:
    """The deal as an injection from (slot, rack) pairs to (suit, rank) pairs."""
    mapping = {}
    for slot, row in enumerate(_START_ROWS):
        for rack, cell in zip(RACKS, row.split()):
            rank, suit_char = cell[0], cell[1]
            mapping[(slot, rack)] = (SUIT_OF_CHAR[suit_char], rank)
    domain = tuple((i, a) for i in range(4) for a in RACKS)
    codomain = tuple((j, b) for j in range(4) for b in RANKS)
    return InjectionWitness(domain, codomain, mapping, provenance="bundled demonstration deal")


def worked_instance() -> tuple:
    """(n, A, B, witness, mode) for the demonstration deal."""
    return 4, RACKS, RANKS, worked_witness(), Mode.LONG


def worked_layout() -> Layout:
    n, a, b, witness, mode = worked_instance()
    return layout_from_injection(n, a, b, witness, mode)
