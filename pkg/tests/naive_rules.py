"""An independent, deliberately naive shipshaping interpreter.

Boards are plain dicts of (rack, slot) -> (suit, rank) tuples, every round
rescans everything, and targets are found by linear search. Slow and
simple on purpose: it exists only to cross-check the engine's results.
"""

from __future__ import annotations


def bad_spade_spots(board, racks):
    found = [(rk, sl) for (rk, sl), (s, _r) in board.items() if s == 0 and sl != 0]
    order = {rk: i for i, rk in enumerate(racks)}
    return sorted(found, key=lambda p: (order[p[0]], p[1]))


def run_shipshaping(board, deck, racks, policy="all"):
    """Alternate the two rounds to quiescence; returns (board, deck, swaps)."""
    board = dict(board)
    deck = set(deck)
    swaps = 0
    kind = "shape_up"
    for _ in range(100000):
        bad = bad_spade_spots(board, racks)
        if not bad:
            break
        if kind == "shape_up":
            chosen = []
            for rk in racks:
                slots = [sl for (r2, sl) in bad if r2 == rk]
                if not slots:
                    continue
                holder = board.get((rk, 0))
                if holder is not None and holder[0] == 0:
                    continue
                chosen.append((rk, min(slots)))
            for rk, sl in chosen:
                mover = board.pop((rk, sl))
                holder = board.pop((rk, 0), None)
                board[(rk, 0)] = mover
                if holder is not None:
                    board[(rk, sl)] = holder
                swaps += 1
        else:
            chosen = []
            for rk in racks:
                slots = [sl for (r2, sl) in bad if r2 == rk]
                if not slots:
                    continue
                if policy == "leftmost":
                    slots = [min(slots)]
                holder = board.get((rk, 0))
                assert holder is not None and holder[0] == 0, "ship out without good spade"
                for sl in slots:
                    chosen.append(((rk, sl), (sl, holder[1])))
            for spot, want in chosen:
                where = None
                for spot2, card in board.items():
                    if card == want:
                        where = spot2
                        break
                mover = board[spot]
                if where is not None:
                    board[spot], board[where] = board[where], mover
                else:
                    assert want in deck
                    deck.remove(want)
                    deck.add(mover)
                    board[spot] = want
                swaps += 1
        kind = "ship_out" if kind == "shape_up" else "shape_up"
    else:
        raise AssertionError("naive interpreter did not terminate")
    return board, deck, swaps
