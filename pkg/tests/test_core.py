import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carddiv.core import (
    Card,
    DeckLoc,
    InjectionWitness,
    Layout,
    Mode,
    Spot,
    apply_swaps,
    instance_to_witness,
    layout_from_injection,
    verify_bijection,
    verify_injection,
    witness_to_instance,
)
from carddiv.errors import LayoutError, MalformedWitnessError, SwapConflictError

from oracles import injective_pairwise, injective_sorted


def _witness(domain, codomain, mapping):
    return InjectionWitness(tuple(domain), tuple(codomain), dict(mapping))


def test_verify_injection_identity():
    w = _witness("ab", "ab", {"a": "a", "b": "b"})
    assert verify_injection(w) is True


def test_verify_injection_collision():
    w = _witness("ab", "xy", {"a": "x", "b": "x"})
    assert verify_injection(w) is False


def test_verify_injection_spades_map_from_settled_deal():
    ranks = {"1": "9", "2": "6", "3": "K", "4": "5", "5": "A", "6": "Q", "7": "J", "8": "T", "9": "8", "10": "4"}
    w = _witness(ranks.keys(), "456789TJQKA", ranks)
    assert verify_injection(w) is True


def test_malformed_witness_raises_not_false():
    not_total = InjectionWitness(("a", "b"), ("x", "y"), {"a": "x"})
    with pytest.raises(MalformedWitnessError):
        verify_injection(not_total)
    outside = InjectionWitness(("a",), ("x",), {"a": "zzz"})
    with pytest.raises(MalformedWitnessError):
        verify_injection(outside)


def test_verify_bijection_needs_full_image():
    w = _witness("ab", "xyz", {"a": "x", "b": "y"})
    assert verify_injection(w) is True
    assert verify_bijection(w) is False


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 60), st.integers(1, 60))
def test_verify_injection_matches_pairwise_scan(seed, da, dc):
    from carddiv.prng import Xoshiro256StarStar

    rng = Xoshiro256StarStar(seed)
    domain = tuple(range(da))
    codomain = tuple(range(dc))
    mapping = {x: rng.randbelow(dc) for x in domain}
    w = _witness(domain, codomain, mapping)
    assert verify_injection(w) == injective_pairwise(mapping, domain)


def test_verify_injection_large_domain_against_sorted_scan():
    n = 10_000
    domain = tuple(range(n))
    mapping = {x: x * 7 % n for x in domain}  # 7 is coprime to 10_000? no: gcd=1, yes
    w = _witness(domain, domain, mapping)
    assert verify_injection(w) is True
    assert injective_sorted(mapping, domain) is True
    mapping2 = dict(mapping)
    mapping2[1234] = mapping2[4321]
    w2 = _witness(domain, domain, mapping2)
    assert verify_injection(w2) is False
    assert injective_sorted(mapping2, domain) is False


# ---------------------------------------------------------------------------
# layout_from_injection


def _n2_witness():
    domain = tuple((i, a) for i in range(2) for a in ("1", "2"))
    codomain = tuple((j, b) for j in range(2) for b in ("x", "y", "z"))
    mapping = {(0, "1"): (1, "x"), (1, "1"): (0, "x"), (0, "2"): (0, "y"), (1, "2"): (1, "z")}
    return InjectionWitness(domain, codomain, mapping)


def test_layout_long_small_example():
    layout = layout_from_injection(2, ("1", "2"), ("x", "y", "z"), _n2_witness(), Mode.LONG)
    assert layout.board[Spot("1", 0)] == Card(1, "x")
    assert layout.board[Spot("1", 1)] == Card(0, "x")
    assert layout.board[Spot("2", 0)] == Card(0, "y")
    assert layout.board[Spot("2", 1)] == Card(1, "z")
    assert layout.deck == frozenset({Card(1, "y"), Card(0, "z")})


def test_layout_n1_bijection_fills_single_spots():
    domain = tuple((0, a) for a in "abc")
    codomain = tuple((0, b) for b in "pqr")
    w = InjectionWitness(domain, codomain, {(0, "a"): (0, "q"), (0, "b"): (0, "r"), (0, "c"): (0, "p")})
    layout = layout_from_injection(1, "abc", "pqr", w, Mode.LONG)
    cards = {layout.board[Spot(a, 0)] for a in "abc"}
    assert len(cards) == 3 and not layout.deck


def test_layout_rejects_noninjective():
    domain = tuple((0, a) for a in "ab")
    codomain = tuple((0, b) for b in "pq")
    w = InjectionWitness(domain, codomain, {(0, "a"): (0, "p"), (0, "b"): (0, "p")})
    with pytest.raises(MalformedWitnessError):
        layout_from_injection(1, "ab", "pq", w, Mode.LONG)


def test_layout_rejects_shape_mismatch():
    w = _n2_witness()
    with pytest.raises(LayoutError):
        layout_from_injection(2, ("1", "2", "3"), ("x", "y", "z"), w, Mode.LONG)


def test_layout_short_places_all_cards():
    layout = layout_from_injection(2, ("1", "2"), ("x", "y", "z"), _n2_witness(), Mode.SHORT)
    assert not layout.deck
    assert len(layout.board) == 4
    # (0, "1") is the card 1-of-suit-0, dealt to rack x slot 1
    assert layout.board[Spot("x", 1)] == Card(0, "1")


# ---------------------------------------------------------------------------
# apply_swaps


def test_apply_swaps_empty_is_identity():
    layout = layout_from_injection(2, ("1", "2"), ("x", "y", "z"), _n2_witness(), Mode.LONG)
    assert apply_swaps(layout, []) == layout


def test_apply_swaps_conserves_cards_and_exchanges():
    layout = layout_from_injection(2, ("1", "2"), ("x", "y", "z"), _n2_witness(), Mode.LONG)
    swapped = apply_swaps(layout, [(Spot("1", 0), Spot("1", 1))])
    assert swapped.board[Spot("1", 0)] == Card(0, "x")
    assert swapped.board[Spot("1", 1)] == Card(1, "x")
    assert swapped.deck == layout.deck
    assert set(swapped.board.values()) | set(swapped.deck) == layout.all_cards()


def test_apply_swaps_with_deck_location():
    layout = layout_from_injection(2, ("1", "2"), ("x", "y", "z"), _n2_witness(), Mode.LONG)
    swapped = apply_swaps(layout, [(Spot("1", 1), DeckLoc(Card(1, "y")))])
    assert swapped.board[Spot("1", 1)] == Card(1, "y")
    assert Card(0, "x") in swapped.deck and Card(1, "y") not in swapped.deck


def test_apply_swaps_overlap_is_conflict():
    layout = layout_from_injection(2, ("1", "2"), ("x", "y", "z"), _n2_witness(), Mode.LONG)
    p, q, r = Spot("1", 0), Spot("1", 1), Spot("2", 0)
    with pytest.raises(SwapConflictError):
        apply_swaps(layout, [(p, q), (q, r)])


# ---------------------------------------------------------------------------
# instance files


def test_instance_round_trip():
    w = _n2_witness()
    doc = witness_to_instance(2, ("1", "2"), ("x", "y", "z"), w, Mode.LONG)
    n, a_elems, b_elems, w2, mode = instance_to_witness(doc)
    assert (n, a_elems, b_elems, mode) == (2, ("1", "2"), ("x", "y", "z"), Mode.LONG)
    assert {k: tuple(v) for k, v in w2.map.items()} == w.map


def test_instance_rejects_partial_map():
    doc = {"n": 2, "A": ["1"], "B": ["x"], "mode": "long", "map": [[[0, "1"], [0, "x"]]]}
    with pytest.raises(MalformedWitnessError):
        instance_to_witness(doc)
