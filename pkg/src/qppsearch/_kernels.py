"""Numba kernels for the spectrum engine and the Log-MAP decoder.

Everything here is internal. The 8-state tables mirror turbo.py; they are
rebuilt locally as plain arrays so the jitted code never touches Python
objects.
"""

import numpy as np
from numba import njit

from .turbo import NEXT_STATE, PARITY, TAIL_INPUT

N_STATES = 8

# Per-step weight seen by the enumerator: systematic bit + parity for the
# first encoder, parity only for the second (its systematic is not sent).
STEP_W1 = np.array([[PARITY[s, 0], 1 + PARITY[s, 1]] for s in range(N_STATES)], dtype=np.int64)
STEP_W2 = PARITY.astype(np.int64)


def _termination_weights():
    w = np.zeros(N_STATES, dtype=np.int64)
    for s0 in range(N_STATES):
        s, acc = s0, 0
        for _ in range(3):
            u = TAIL_INPUT[s]
            acc += u + PARITY[s, u]
            s = NEXT_STATE[s, u]
        assert s == 0
        w[s0] = acc
    return w


TAIL_W = _termination_weights()


def _zero_run_tables():
    """State and parity-weight prefix tables for zero-input coasting.

    Under zero input the nonzero states form a single 7-cycle emitting
    parity weight 4 per period; state 0 is absorbing with weight 0.
    """
    zs = np.zeros((N_STATES, 7), dtype=np.int64)
    zw = np.zeros((N_STATES, 7), dtype=np.int64)
    for s0 in range(N_STATES):
        s, acc = s0, 0
        for r in range(7):
            zs[s0, r] = s
            zw[s0, r] = acc
            acc += PARITY[s, 0]
            s = NEXT_STATE[s, 0]
        assert s == s0 or s0 == 0
    return zs, zw


ZRUN_STATE, ZRUN_W = _zero_run_tables()
ZCYCLE_W = 4


STATUS_PAUSED = 0
STATUS_DONE = 1
STATUS_BUDGET = 2

# Any nonzero pattern drives the second encoder through at least one error
# event. A closed event's parity is a nonzero multiple of the feedforward
# polynomial, so its weight is at least 2; events running into termination
# pay the first step's parity plus at least 2 tail weight.
ENC2_MIN_EVENT = 2


def coast_table(L: int) -> np.ndarray:
    """coast[x, s]: forced first-encoder weight of zero input from state s at
    time x to the end of the block, termination tail included."""
    coast = np.zeros((L + 1, N_STATES), dtype=np.int64)
    for x in range(L + 1):
        rem = L - x
        for s in range(N_STATES):
            if s == 0:
                coast[x, s] = TAIL_W[0]
            else:
                e = ZRUN_STATE[s, rem % 7]
                coast[x, s] = ZCYCLE_W * (rem // 7) + ZRUN_W[s, rem % 7] + TAIL_W[e]
    return coast


def continuation_bounds(L: int, coast: np.ndarray) -> np.ndarray:
    """W[t, s]: cheapest first-encoder weight of any continuation from state s
    at time t that still contains a 1, coasting and termination included."""
    INF = 1 << 30
    W = np.full((L + 1, N_STATES), INF, dtype=np.int64)
    for t in range(L - 1, -1, -1):
        for s in range(N_STATES):
            n1 = NEXT_STATE[s, 1]
            best = STEP_W1[s, 1] + coast[t + 1, n1]  # the last 1 sits at t
            c = STEP_W1[s, 0] + W[t + 1, NEXT_STATE[s, 0]]
            if c < best:
                best = c
            c = STEP_W1[s, 1] + W[t + 1, n1]
            if c < best:
                best = c
            W[t, s] = best
    return W


@njit(cache=True, nogil=True)
def dfs_chunk(
    L,
    capacity,
    ceiling,
    thr_d,
    thr_meta,
    wbound,
    coast,
    inv_perm,
    next_t,
    step1,
    tail_w,
    zrun_s,
    zrun_w,
    t_st,
    s_st,
    a_st,
    ph_st,
    by1_st,
    sp,
    n1,
    ones,
    scratch,
    leaf_d,
    leaf_w,
    node_cap,
):
    """Resumable depth-first enumeration of information patterns.

    Prefixes are walked over the first encoder's trellis, zero branch first,
    and each nonzero pattern is emitted exactly once: at its last 1, where
    the remaining weight is the precomputed coast plus terminations and the
    second encoder's parity, evaluated sparsely from the interleaved
    positions of the ones. A prefix survives only while its accumulated
    weight plus the cheapest still-one-bearing continuation plus the second
    encoder's minimum event weight stays within the working threshold.

    The working threshold is maintained in-kernel: the ceiling until
    `capacity` distinct distances have been emitted, afterwards the largest
    kept distance (thr_d holds the kept distances, thr_meta their count).
    This mirrors exactly what the driver-side recorder would compute, so
    emitted leaves and recorded spectra stay in lockstep.

    Returns (sp, n1, n_leaves, nodes, status); the explicit stack persists
    across calls so the driver can consume leaves between chunks.
    """
    leaf_cap = leaf_d.size
    n_leaves = 0
    nodes = 0
    n_thr = thr_meta[0]
    threshold = thr_d[capacity - 1] if n_thr == capacity else ceiling
    while sp > 0:
        i = sp - 1
        ph = ph_st[i]
        if ph == 0:
            nodes += 1
            t = t_st[i]
            s = s_st[i]
            if t == L or a_st[i] + wbound[t, s] + ENC2_MIN_EVENT > threshold:
                ph_st[i] = 2
                continue
            ph_st[i] = 1
            t_st[sp] = t + 1
            s_st[sp] = next_t[s, 0]
            a_st[sp] = a_st[i] + step1[s, 0]
            ph_st[sp] = 0
            by1_st[sp] = 0
            sp += 1
            if nodes >= node_cap:
                return sp, n1, n_leaves, nodes, STATUS_BUDGET
        elif ph == 1:
            ph_st[i] = 2
            t = t_st[i]
            s = s_st[i]
            acc1 = a_st[i] + step1[s, 1]
            ns = next_t[s, 1]
            ones[n1] = t
            n1 += 1
            # pattern that ends here: forced coast, then both terminations
            d = acc1 + coast[t + 1, ns]
            if d + ENC2_MIN_EVENT <= threshold:
                for j in range(n1):
                    scratch[j] = inv_perm[ones[j]]
                for j in range(1, n1):
                    v = scratch[j]
                    m = j - 1
                    while m >= 0 and scratch[m] > v:
                        scratch[m + 1] = scratch[m]
                        m -= 1
                    scratch[m + 1] = v
                s2 = 0
                w2 = 0
                cur = 0
                for j in range(n1):
                    gap = scratch[j] - cur
                    if s2 != 0 and gap > 0:
                        w2 += ZCYCLE_W * (gap // 7) + zrun_w[s2, gap % 7]
                        s2 = zrun_s[s2, gap % 7]
                    w2 += step1[s2, 1] - 1  # parity only
                    s2 = next_t[s2, 1]
                    cur = scratch[j] + 1
                gap = L - cur
                if s2 != 0 and gap > 0:
                    w2 += ZCYCLE_W * (gap // 7) + zrun_w[s2, gap % 7]
                    s2 = zrun_s[s2, gap % 7]
                d += w2 + tail_w[s2]
                if d <= threshold:
                    leaf_d[n_leaves] = d
                    leaf_w[n_leaves] = n1
                    n_leaves += 1
                    # fold the new distance into the working threshold
                    pos = -1
                    known = False
                    for j in range(n_thr):
                        if thr_d[j] == d:
                            known = True
                            break
                        if thr_d[j] > d:
                            pos = j
                            break
                    if not known:
                        if pos < 0:
                            if n_thr < capacity:
                                thr_d[n_thr] = d
                                n_thr += 1
                        else:
                            top = n_thr if n_thr < capacity else capacity - 1
                            for j in range(top, pos, -1):
                                thr_d[j] = thr_d[j - 1]
                            thr_d[pos] = d
                            if n_thr < capacity:
                                n_thr += 1
                        if n_thr == capacity:
                            threshold = thr_d[capacity - 1]
                        thr_meta[0] = n_thr
            t_st[sp] = t + 1
            s_st[sp] = ns
            a_st[sp] = acc1
            ph_st[sp] = 0
            by1_st[sp] = 1
            sp += 1
            if n_leaves == leaf_cap:
                return sp, n1, n_leaves, nodes, STATUS_PAUSED
        else:
            sp -= 1
            if by1_st[i]:
                n1 -= 1
    return sp, n1, n_leaves, nodes, STATUS_DONE


@njit(cache=True)
def weight_histogram(L, perm, next_t, par_t, tail_in):
    """Exhaustive (count, info-weight-sum) per codeword weight, L <= 20."""
    n_bits = 3 * L + 13
    counts = np.zeros(n_bits, dtype=np.int64)
    wsums = np.zeros(n_bits, dtype=np.int64)
    u = np.zeros(L, dtype=np.int64)
    for word in range(1, 1 << L):
        for t in range(L):
            u[t] = (word >> t) & 1
        d = 0
        wu = 0
        s = 0
        for t in range(L):
            d += u[t] + par_t[s, u[t]]
            wu += u[t]
            s = next_t[s, u[t]]
        for _ in range(3):
            ti = tail_in[s]
            d += ti + par_t[s, ti]
            s = next_t[s, ti]
        s = 0
        for t in range(L):
            v = u[perm[t]]
            d += par_t[s, v]
            s = next_t[s, v]
        for _ in range(3):
            ti = tail_in[s]
            d += ti + par_t[s, ti]
            s = next_t[s, ti]
        counts[d] += 1
        wsums[d] += wu
    return counts, wsums


@njit(cache=True)
def encode_kernel(info, perm, next_t, par_t, tail_in, out):
    """Fill out (3L+12) with the turbo codeword; layout sys|par1|par2|tails."""
    L = info.size
    s = 0
    for t in range(L):
        out[t] = info[t]
        out[L + t] = par_t[s, info[t]]
        s = next_t[s, info[t]]
    for j in range(3):
        ti = tail_in[s]
        out[3 * L + 2 * j] = ti
        out[3 * L + 2 * j + 1] = par_t[s, ti]
        s = next_t[s, ti]
    s = 0
    for t in range(L):
        v = info[perm[t]]
        out[2 * L + t] = par_t[s, v]
        s = next_t[s, v]
    for j in range(3):
        ti = tail_in[s]
        out[3 * L + 6 + 2 * j] = ti
        out[3 * L + 6 + 2 * j + 1] = par_t[s, ti]
        s = next_t[s, ti]


@njit(cache=True, inline="always")
def _max_star(a, b):
    if a < b:
        a, b = b, a
    return a + np.log1p(np.exp(b - a))


NEG_INF = -1.0e30


@njit(cache=True, nogil=True)
def bcjr_log_map(sys_llr, par_llr, tail_sys, tail_par, apriori, next_t, par_t, tail_in, post):
    """One constituent Log-MAP pass; fills post with info-bit posterior LLRs.

    LLR sign convention: positive means bit 0. Branch metrics use the exact
    max* correction. The three termination steps initialise the backward
    metrics so the block ends in state 0.
    """
    K = sys_llr.size
    alpha = np.full((K + 1, N_STATES), NEG_INF)
    alpha[0, 0] = 0.0
    for t in range(K):
        lu = sys_llr[t] + apriori[t]
        lp = par_llr[t]
        for s in range(N_STATES):
            a = alpha[t, s]
            if a <= NEG_INF / 2:
                continue
            for u in range(2):
                g = 0.5 * (1 - 2 * u) * lu + 0.5 * (1 - 2 * par_t[s, u]) * lp
                ns = next_t[s, u]
                v = a + g
                if alpha[t + 1, ns] <= NEG_INF / 2:
                    alpha[t + 1, ns] = v
                else:
                    alpha[t + 1, ns] = _max_star(alpha[t + 1, ns], v)
    beta = np.full(N_STATES, NEG_INF)
    beta[0] = 0.0
    for j in range(2, -1, -1):
        nb = np.full(N_STATES, NEG_INF)
        for s in range(N_STATES):
            u = tail_in[s]
            ns = next_t[s, u]
            if beta[ns] <= NEG_INF / 2:
                continue
            g = 0.5 * (1 - 2 * u) * tail_sys[j] + 0.5 * (1 - 2 * par_t[s, u]) * tail_par[j]
            nb[s] = beta[ns] + g
        beta = nb
    for t in range(K - 1, -1, -1):
        lu = sys_llr[t] + apriori[t]
        lp = par_llr[t]
        m0 = NEG_INF
        m1 = NEG_INF
        nb = np.full(N_STATES, NEG_INF)
        for s in range(N_STATES):
            a = alpha[t, s]
            for u in range(2):
                g = 0.5 * (1 - 2 * u) * lu + 0.5 * (1 - 2 * par_t[s, u]) * lp
                ns = next_t[s, u]
                b = beta[ns]
                if b <= NEG_INF / 2:
                    continue
                gb = g + b
                if nb[s] <= NEG_INF / 2:
                    nb[s] = gb
                else:
                    nb[s] = _max_star(nb[s], gb)
                if a <= NEG_INF / 2:
                    continue
                full = a + gb
                if u == 0:
                    m0 = full if m0 <= NEG_INF / 2 else _max_star(m0, full)
                else:
                    m1 = full if m1 <= NEG_INF / 2 else _max_star(m1, full)
        beta = nb
        post[t] = m0 - m1
