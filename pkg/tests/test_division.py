import math

import pytest

from carddiv.core import (
    BijectionWitness,
    Card,
    InjectionWitness,
    Mode,
    Spot,
    layout_from_injection,
    verify_bijection,
    verify_injection,
)
from carddiv.division import (
    LONG,
    SHORT,
    Schedule,
    divide_bijection,
    halving_pass_bound,
    long_divide,
    reduce_pass_grouped,
    short_divide,
)
from carddiv.errors import ScheduleError
from carddiv.prng import Xoshiro256StarStar
from carddiv.worked_deal import worked_instance

from gen import random_instance
from naive_rules import run_shipshaping


def _n2_case():
    domain = tuple((i, a) for i in range(2) for a in ("1", "2"))
    codomain = tuple((j, b) for j in range(2) for b in ("x", "y", "z"))
    mapping = {(0, "1"): (1, "x"), (1, "1"): (0, "x"), (0, "2"): (0, "y"), (1, "2"): (1, "z")}
    return 2, ("1", "2"), ("x", "y", "z"), InjectionWitness(domain, codomain, mapping)


def test_long_divide_n1_is_the_input_map():
    domain = tuple((0, a) for a in "ab")
    codomain = tuple((0, b) for b in "pq")
    w = InjectionWitness(domain, codomain, {(0, "a"): (0, "q"), (0, "b"): (0, "p")})
    report = long_divide(1, "ab", "pq", w)
    assert report.passes == 0 and report.total_swaps == 0
    assert report.result.map == {"a": "q", "b": "p"}


def test_long_divide_small_example_frozen_by_naive_interpreter():
    # Expected value derived by the independent interpreter: after the one
    # pass the hearts-slot cards read off {1 -> x, 2 -> z}.
    n, a_elems, b_elems, w = _n2_case()
    layout = layout_from_injection(n, a_elems, b_elems, w, Mode.LONG)
    board, _deck, _swaps = run_shipshaping(
        {(s.rack, s.slot): tuple(c) for s, c in layout.board.items()},
        {tuple(c) for c in layout.deck},
        a_elems,
    )
    expected = {rack: board[(rack, 1)][1] for rack in a_elems}
    assert expected == {"1": "x", "2": "z"}

    report = long_divide(n, a_elems, b_elems, w)
    assert report.result.map == expected
    assert verify_injection(report.result)
    assert report.passes == 1


def test_long_divide_worked_instance_metrics():
    n, a_elems, b_elems, w, _mode = worked_instance()
    naive = long_divide(n, a_elems, b_elems, w, Schedule.naive())
    assert naive.passes == n - 1
    assert all(s <= n * len(a_elems) for s in naive.per_pass)
    assert verify_injection(naive.result)
    halved = long_divide(n, a_elems, b_elems, w, Schedule.halving())
    assert halved.passes <= halving_pass_bound(n)
    assert halved.total_swaps <= 4 * n * len(a_elems)
    assert verify_injection(halved.result)


def test_long_divide_deterministic():
    n, a_elems, b_elems, w, _mode = worked_instance()
    a = long_divide(n, a_elems, b_elems, w, Schedule.halving())
    b = long_divide(n, a_elems, b_elems, w, Schedule.halving())
    assert a.result.map == b.result.map and a.per_pass == b.per_pass


# ---------------------------------------------------------------------------
# grouped passes


def test_grouped_pass_k2_halves_the_suit_count():
    rng = Xoshiro256StarStar(91)
    n, a_elems, b_elems, w = random_instance(rng, 4, 6, 9)
    layout = layout_from_injection(n, a_elems, b_elems, w, Mode.LONG)
    reduced, trace = reduce_pass_grouped(layout, 2)
    assert reduced.suit_count == 2
    assert reduced.ranks == b_elems and reduced.racks == a_elems
    reduced.validate()
    assert trace.total_swaps <= 2 * (4 // 2) * len(a_elems)


def test_grouped_pass_k_equal_m_is_a_plain_pass():
    rng = Xoshiro256StarStar(92)
    n, a_elems, b_elems, w = random_instance(rng, 4, 5, 8)
    layout = layout_from_injection(n, a_elems, b_elems, w, Mode.LONG)
    grouped, t1 = reduce_pass_grouped(layout, 4)
    assert grouped.suit_count == 3
    grouped.validate()


def test_grouped_pass_k3_of_6_keeps_injectivity():
    rng = Xoshiro256StarStar(93)
    n, a_elems, b_elems, w = random_instance(rng, 6, 7, 11)
    layout = layout_from_injection(n, a_elems, b_elems, w, Mode.LONG)
    reduced, _trace = reduce_pass_grouped(layout, 3)
    assert reduced.suit_count == 4
    reduced.validate()
    # the remaining board *is* an injection: spots to distinct cards
    cards = list(reduced.board.values())
    assert len(set(cards)) == len(cards)


def test_grouped_pass_rejects_bad_k():
    rng = Xoshiro256StarStar(94)
    n, a_elems, b_elems, w = random_instance(rng, 4, 3, 5)
    layout = layout_from_injection(n, a_elems, b_elems, w, Mode.LONG)
    with pytest.raises(ScheduleError):
        reduce_pass_grouped(layout, 3)


def test_factor_schedule_validation():
    assert Schedule.factors([2, 2]).plan(4) == [2, 2]
    with pytest.raises(ScheduleError):
        Schedule.factors([2]).plan(4)  # stops at 2 suits
    with pytest.raises(ScheduleError):
        Schedule.factors([3, 2]).plan(4)  # 3 does not divide 4
    assert Schedule.parse("3,2,2").plan(6) == [3, 2, 2]


def test_factor_schedule_divides():
    n, a_elems, b_elems, w, _mode = worked_instance()
    report = long_divide(n, a_elems, b_elems, w, Schedule.factors([2, 2]))
    assert report.passes == 2
    assert verify_injection(report.result)


# ---------------------------------------------------------------------------
# short division


def test_short_divide_small_example():
    domain = tuple((i, a) for i in range(2) for a in ("1", "2"))
    codomain = tuple((j, b) for j in range(2) for b in ("x", "y", "z"))
    mapping = {(0, "1"): (1, "x"), (1, "1"): (0, "y"), (0, "2"): (1, "y"), (1, "2"): (0, "x")}
    out = short_divide(2, ("1", "2"), ("x", "y", "z"), InjectionWitness(domain, codomain, mapping))
    assert out.result.map == {"1": "x", "2": "y"}
    assert out.good_set == ("x", "y")
    assert out.bad_ranks == ()


def test_short_divide_already_settled_needs_no_swaps():
    domain = tuple((i, a) for i in range(1) for a in ("1", "2"))
    codomain = tuple((j, b) for j in range(1) for b in ("x", "y"))
    mapping = {(0, "1"): (0, "x"), (0, "2"): (0, "y")}
    out = short_divide(1, ("1", "2"), ("x", "y"), InjectionWitness(domain, codomain, mapping))
    assert out.total_swaps == 0
    assert out.result.map == {"1": "x", "2": "y"}


def test_short_divide_bijection_input_settles_every_rank():
    rng = Xoshiro256StarStar(95)
    for _ in range(20):
        n = 2 + rng.randbelow(4)
        size = 1 + rng.randbelow(25)
        n, a_elems, b_elems, w = random_instance(rng, n, size, size)
        out = short_divide(n, a_elems, b_elems, w)
        assert verify_injection(out.result)
        assert set(out.result.map) == set(a_elems)
        assert out.total_swaps <= n * size


# ---------------------------------------------------------------------------
# dividing bijections


def test_divide_bijection_n1_is_input():
    domain = tuple((0, a) for a in "ab")
    codomain = tuple((0, b) for b in "pq")
    w = BijectionWitness(domain, codomain, {(0, "a"): (0, "q"), (0, "b"): (0, "p")})
    out = divide_bijection(1, "ab", "pq", w)
    assert out.map == {"a": "q", "b": "p"}


def test_divide_bijection_worked_instance_both_methods():
    n, a_elems, b_elems, w, _mode = worked_instance()
    big = BijectionWitness(w.domain, w.codomain, w.map)
    for method in (LONG, SHORT):
        out = divide_bijection(n, a_elems, b_elems, big, method=method)
        assert verify_bijection(out)


def test_divide_bijection_seeded():
    from gen import random_pair_bijection

    rng = Xoshiro256StarStar(96)
    a_elems, b_elems, big = random_pair_bijection(rng, 3, 3, 50)
    out = divide_bijection(3, a_elems, b_elems, big)
    assert verify_bijection(out)
    assert set(out.domain) == set(a_elems) and set(out.codomain) == set(b_elems)


def test_divide_bijection_requires_bijection():
    from carddiv.errors import InvalidWitnessError

    n, a_elems, b_elems, w = _n2_case()
    big = BijectionWitness(w.domain, w.codomain, w.map)  # not onto
    with pytest.raises(InvalidWitnessError):
        divide_bijection(2, a_elems, b_elems, big)


# ---------------------------------------------------------------------------
# report form


def test_report_document_shape():
    n, a_elems, b_elems, w, _mode = worked_instance()
    doc = long_divide(n, a_elems, b_elems, w).to_doc()
    assert sorted(doc) == ["passes", "per_pass", "result", "total_swaps"]
    assert doc["total_swaps"] == sum(doc["per_pass"])
    assert len(doc["result"]) == len(a_elems)
