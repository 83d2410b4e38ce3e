"""Vectorized batch runner for the solitaire Monte Carlo harness.

Simulates thousands of games in lockstep with numpy, one move per game per
step, finished games dropping out as they resolve. Every game draws only
from its own xoshiro256** stream (seeded exactly like the scalar engine),
so a game's trajectory is bit-identical whether it runs here, in the
scalar engine, or in any batch split; the test suite replays games both
ways and compares full trajectories.
"""

from __future__ import annotations

import numpy as np

from .solitaire import Status, Strategy

_U64 = np.uint64
_MASK32_HI = _U64(0xFFFFFFFFFFFFFFFF)

_SM_GAMMA = _U64(0x9E3779B97F4A7C15)
_SM_MIX1 = _U64(0xBF58476D1CE4E5B9)
_SM_MIX2 = _U64(0x94D049BB133111EB)

_STATUS_CODES = np.array(
    [Status.ACTIVE.value, Status.WON.value, Status.STUCK.value, Status.CAPPED.value]
)
_ACTIVE, _WON, _STUCK, _CAPPED = 0, 1, 2, 3

_ROWS = np.arange(4)


def _sm_mix(z):
    z = (z ^ (z >> _U64(30))) * _SM_MIX1
    z = (z ^ (z >> _U64(27))) * _SM_MIX2
    return z ^ (z >> _U64(31))


def _xoshiro_init(seeds):
    state = np.asarray(seeds, dtype=np.uint64).copy()
    out = []
    for _ in range(4):
        state = state + _SM_GAMMA
        out.append(_sm_mix(state))
    return out  # [s0, s1, s2, s3]


def _rotl(x, k):
    k = _U64(k)
    return (x << k) | (x >> (_U64(64) - k))


def _xoshiro_step(s):
    s0, s1, s2, s3 = s
    result = _rotl(s1 * _U64(5), 7) * _U64(9)
    t = s1 << _U64(17)
    s2 = s2 ^ s0
    s3 = s3 ^ s1
    s1 = s1 ^ s2
    s0 = s0 ^ s3
    s2 = s2 ^ t
    s3 = _rotl(s3, 45)
    return [s0, s1, s2, s3], result


def _randbelow(s, n, mask):
    """Per-game unbiased draw below n; only games in `mask` advance.

    n may be a scalar or a per-game array. Mirrors the scalar rejection
    loop: a masked game redraws until its draw clears the bias threshold,
    other games' states stay put.
    """
    n = np.broadcast_to(np.asarray(n, dtype=np.uint64), s[0].shape).copy()
    n[~mask] = _U64(1)  # avoid division noise; results there are unused
    bound = (_U64(0) - n) % n  # == 2**64 mod n
    value = np.zeros_like(s[0])
    pending = mask.copy()
    while pending.any():
        stepped, draw = _xoshiro_step(s)
        s = [np.where(pending, new, old) for new, old in zip(stepped, s)]
        ok = pending & ~((bound != 0) & (draw >= (_U64(0) - bound)))
        value = np.where(ok, draw % n, value)
        pending = pending & ~ok
    return s, value


def _deal(seeds):
    g = len(seeds)
    s = _xoshiro_init(seeds)
    grid = np.tile(np.arange(52, dtype=np.int64), (g, 1))
    rows = np.arange(g)
    everyone = np.ones(g, dtype=bool)
    for i in range(51, 0, -1):
        s, j = _randbelow(s, i + 1, everyone)
        j = j.astype(np.int64)
        gi = grid[rows, i].copy()
        grid[rows, i] = grid[rows, j]
        grid[rows, j] = gi
    pos = np.empty_like(grid)
    pos[rows[:, None], grid] = np.arange(52, dtype=np.int64)[None, :]
    return s, grid, pos


def simulate_games(strategy: Strategy, seeds, cap: int, return_grids: bool = False):
    """Play one full game per seed; returns (statuses, move_counts[, grids]).

    Statuses come back as the same strings the scalar engine reports.
    """
    seeds = list(seeds)
    g = len(seeds)
    s, grid, pos = _deal(seeds)
    move_count = np.zeros(g, dtype=np.int64)
    final_status = np.full(g, _ACTIVE, dtype=np.int8)
    final_moves = np.zeros(g, dtype=np.int64)
    final_grid = np.zeros((g, 52), dtype=np.int64) if return_grids else None
    orig = np.arange(g)

    while len(orig):
        n_alive = len(orig)
        suit3 = (grid // 13).reshape(n_alive, 4, 13)
        rank3 = (grid % 13).reshape(n_alive, 4, 13)
        own = suit3 == _ROWS[None, :, None]
        anchored = np.take_along_axis(own, suit3, axis=1)
        legal = (suit3 != _ROWS[None, :, None]) & anchored
        counts = legal.sum(axis=(1, 2))

        won = own.all(axis=(1, 2)) & (rank3 == rank3[:, :1, :]).all(axis=(1, 2))
        stuck = ~won & (counts == 0)
        capped = ~won & ~stuck & (move_count >= cap)
        done = won | stuck | capped
        if done.any():
            idx = orig[done]
            final_status[idx] = np.select(
                [won[done], stuck[done]], [_WON, _STUCK], default=_CAPPED
            )
            final_moves[idx] = move_count[done]
            if return_grids:
                final_grid[idx] = grid[done]
            keep = ~done
            orig = orig[keep]
            grid = grid[keep]
            pos = pos[keep]
            move_count = move_count[keep]
            s = [comp[keep] for comp in s]
            legal = legal[keep]
            counts = counts[keep]
            own = own[keep]
            rank3 = rank3[keep]
            if not len(orig):
                break
        n_alive = len(orig)
        rows = np.arange(n_alive)

        if strategy is Strategy.RANDOM_LEGAL:
            everyone = np.ones(n_alive, dtype=bool)
            s, k = _randbelow(s, counts.astype(np.uint64), everyone)
            legal_cr = legal.transpose(0, 2, 1).reshape(n_alive, 52)
            cum = np.cumsum(legal_cr, axis=1)
            sel = np.argmax(cum > k.astype(np.int64)[:, None], axis=1)
            mrow = sel % 4
            mcol = sel // 4
        elif strategy is Strategy.SCAN_FIRST:
            sel = np.argmax(legal.reshape(n_alive, 52), axis=1)
            mrow = sel // 13
            mcol = sel % 13
        else:  # GREEDY_HOME
            minr = np.where(own, rank3, 13).min(axis=1)
            maxr = np.where(own, rank3, -1).max(axis=1)
            coherent = minr >= maxr  # vacuously true for anchorless columns
            homing = legal & coherent[:, None, :]
            use_homing = homing.any(axis=(1, 2))
            pool = np.where(use_homing[:, None, None], homing, legal)
            sel = np.argmax(pool.reshape(n_alive, 52), axis=1)
            mrow = sel // 13
            mcol = sel % 13

        mcell = mrow * 13 + mcol
        mover = grid[rows, mcell]
        anchor = grid[rows, (mover // 13) * 13 + mcol]
        target = mrow * 13 + anchor % 13
        tcell = pos[rows, target]
        grid[rows, mcell] = target
        grid[rows, tcell] = mover
        pos[rows, target] = mcell
        pos[rows, mover] = tcell
        move_count += 1

    statuses = _STATUS_CODES[final_status]
    if return_grids:
        return statuses, final_moves, final_grid
    return statuses, final_moves
