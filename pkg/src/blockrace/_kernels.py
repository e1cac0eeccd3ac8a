"""Compiled block-race kernels.

Randomness is counter based: trial ``t`` under seed ``s`` draws from a
SplitMix64 sequence whose starting point is a hash of ``(s, t)``.  A trial's
outcome therefore depends only on its own index, and any partition of the
trial range (threads, chunks, reordering) yields the same totals.
"""

import numba as nb
import numpy as np

_U = nb.uint64
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_TO_UNIT = 1.0 / 9007199254740992.0  # 2**-53


@nb.njit(inline="always")
def _mix64(z):
    z = (z ^ (z >> _U(30))) * _U(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U(27))) * _U(0x94D049BB133111EB)
    return z ^ (z >> _U(31))


@nb.njit(inline="always")
def stream_key(seed):
    return _mix64(_U(seed) ^ _U(0x6A09E667F3BCC909))


@nb.njit(inline="always")
def trial_state(key, t):
    return _mix64(key + _U(t + 1) * _GOLDEN)


@nb.njit(inline="always")
def _next_unit(state):
    state = state + _GOLDEN
    return state, (_mix64(state) >> _U(11)) * _TO_UNIT


@nb.njit(inline="always")
def _phase1(state, n, q):
    # Hider blocks mined before the main branch reaches n blocks.
    m = 0
    main = 0
    steps = 0
    while main < n:
        state, u = _next_unit(state)
        steps += 1
        if u < q:
            m += 1
        else:
            main += 1
    return state, m, steps


@nb.njit(inline="always")
def _walk(state, z, r, q, cap):
    # Deficit walk: success at z <= -r, failure once z exceeds cap.
    steps = 0
    while True:
        if z <= -r:
            return state, True, steps
        if z > cap:
            return state, False, steps
        state, u = _next_unit(state)
        steps += 1
        if u < q:
            z -= 1
        else:
            z += 1


@nb.njit(nogil=True, cache=True)
def type1_range(seed, start, stop, n, r, q, premine, cap):
    key = stream_key(seed)
    wins = 0
    blocks = 0
    for t in range(start, stop):
        state = trial_state(key, t)
        state, m, s1 = _phase1(state, n, q)
        state, won, s2 = _walk(state, n - m - premine, r, q, cap)
        wins += won
        blocks += s1 + s2
    return wins, blocks


@nb.njit(nogil=True, cache=True)
def type0_range(seed, start, stop, q, q_eff, cap_tie, cap_win):
    key = stream_key(seed)
    wins = 0
    blocks = 0
    for t in range(start, stop):
        state = trial_state(key, t)
        state, m, s1 = _phase1(state, 1, q)
        state, tied, s2 = _walk(state, 1 - m, 0, q, cap_tie)
        s3 = 0
        if tied:
            # After publishing, the coalition races from level to a one-block lead.
            state, won, s3 = _walk(state, 0, 1, q_eff, cap_win)
            wins += won
        blocks += s1 + s2 + s3
    return wins, blocks


@nb.njit(nogil=True, cache=True)
def catchup_range(seed, start, stop, z, r, q, cap):
    key = stream_key(seed)
    wins = 0
    blocks = 0
    for t in range(start, stop):
        state = trial_state(key, t)
        state, won, steps = _walk(state, z, r, q, cap)
        wins += won
        blocks += steps
    return wins, blocks


@nb.njit(nogil=True, cache=True)
def phase1_range(seed, start, out, n, q):
    key = stream_key(seed)
    for i in range(out.shape[0]):
        state = trial_state(key, start + i)
        state, m, _ = _phase1(state, n, q)
        out[i] = m


@nb.njit(nogil=True, cache=True)
def uniform_range(seed, trial, out):
    # Raw stream of one trial, for statistical checks of the generator.
    state = trial_state(stream_key(seed), trial)
    for i in range(out.shape[0]):
        state, out[i] = _next_unit(state)
