"""Constructive division of finite sets on decks of cards.

The package turns "n copies of A inject into n copies of B, therefore A
injects into B" and its relatives into executable, witness-producing
algorithms: a lockstep swap engine over card layouts, long and short
division with pass schedules, the classical cancellation laws, a
pointwise-evaluated hiding injection for the countable case, and a
solitaire built on the same swap rule, served over HTTP for human play.
"""

from .core import (
    BijectionWitness,
    Card,
    DeckLoc,
    InjectionWitness,
    Layout,
    Mode,
    Spot,
    apply_swaps,
    layout_from_injection,
    verify_bijection,
    verify_injection,
)
from .division import (
    DivisionReport,
    Schedule,
    ShortDivisionOutcome,
    divide_bijection,
    long_divide,
    reduce_pass_grouped,
    short_divide,
)
from .hilbert import ArithChain, ChainFamily, limiting_suit, swallow_map, trim, verify_disjoint
from .laws import (
    CbVariant,
    EuclidStep,
    TaggedElement,
    cb_combine,
    scaled_cancel,
    euclid_divide,
    general_divide,
    subtract,
    subtract_multi,
)
from .shipshape import (
    ChipState,
    RoundKind,
    RoundTrace,
    ShipOutPolicy,
    render_trace,
    run_chipshape,
    run_pass,
    shape_up_round,
    ship_out_round,
    trim_round,
)
from .solitaire import GameState, Move, Status, Strategy, deal, estimate_win_rate, legal_moves, play

__version__ = "0.1.0"
