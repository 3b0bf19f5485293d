"""LTE constituent RSC encoder and rate-1/3 turbo encoder with dual trellis termination.

The constituent code is fixed to the 8-state LTE code: feedback 1 + D^2 + D^3
(octal 13), feedforward 1 + D + D^3 (octal 15). Both encoders are terminated
independently and contribute 3 systematic + 3 parity tail bits each, so a
block of L information bits encodes to 3L + 12 transmitted bits.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MEMORY = 3
N_STATES = 8
TAIL_BITS = 12

# State packing: s = (s1 << 2) | (s2 << 1) | s3 with s1 the most recent
# register. Register input a = u ^ s2 ^ s3, parity z = a ^ s1 ^ s3.


def _build_tables():
    nxt = np.zeros((N_STATES, 2), dtype=np.int64)
    par = np.zeros((N_STATES, 2), dtype=np.int64)
    for s in range(N_STATES):
        s1, s2, s3 = (s >> 2) & 1, (s >> 1) & 1, s & 1
        for u in range(2):
            a = u ^ s2 ^ s3
            par[s, u] = a ^ s1 ^ s3
            nxt[s, u] = (a << 2) | (s1 << 1) | s2
    return nxt, par


NEXT_STATE, PARITY = _build_tables()

# Termination: the register input is forced to zero by feeding u = s2 ^ s3,
# which is also the transmitted tail systematic bit.
TAIL_INPUT = np.array([((s >> 1) & 1) ^ (s & 1) for s in range(N_STATES)], dtype=np.int64)


@dataclass(frozen=True)
class RscSpec:
    """The fixed LTE constituent code parameters."""

    memory: int = MEMORY
    feedback_octal: int = 0o13
    feedforward_octal: int = 0o15
    states: int = N_STATES


@dataclass(frozen=True)
class TurboCodeword:
    systematic: np.ndarray
    parity1: np.ndarray
    parity2: np.ndarray
    tail: np.ndarray
    total_weight: int
    info_weight: int

    @property
    def bits(self) -> np.ndarray:
        return np.concatenate([self.systematic, self.parity1, self.parity2, self.tail])

    def __len__(self) -> int:
        return 3 * len(self.systematic) + TAIL_BITS


def rsc_encode(info, terminate: bool = True):
    """Encode one block with the LTE constituent code.

    Returns (parity, tail_info, tail_parity, final_state). The tail arrays
    are empty when terminate is False; otherwise the three termination steps
    drive the register to state 0 and final_state is 0.
    """
    info = np.asarray(info, dtype=np.int64)
    parity = np.zeros(info.size, dtype=np.int64)
    s = 0
    for t, u in enumerate(info):
        parity[t] = PARITY[s, u]
        s = NEXT_STATE[s, u]
    if not terminate:
        return parity, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), s
    tail_info = np.zeros(MEMORY, dtype=np.int64)
    tail_parity = np.zeros(MEMORY, dtype=np.int64)
    for j in range(MEMORY):
        u = TAIL_INPUT[s]
        tail_info[j] = u
        tail_parity[j] = PARITY[s, u]
        s = NEXT_STATE[s, u]
    return parity, tail_info, tail_parity, s


def turbo_encode(info, perm) -> TurboCodeword:
    """Encode L information bits with the dual-terminated turbo code.

    The second encoder reads the information block through the interleaver:
    its input at step x is info[perm[x]]. Tail layout is encoder 1's six
    bits (systematic/parity interleaved per step) followed by encoder 2's.
    """
    info = np.asarray(info, dtype=np.int64)
    table = np.asarray(getattr(perm, "table", perm), dtype=np.int64)
    if info.size != table.size:
        raise ValueError(f"info length {info.size} != interleaver length {table.size}")
    parity1, ti1, tp1, _ = rsc_encode(info, terminate=True)
    parity2, ti2, tp2, _ = rsc_encode(info[table], terminate=True)
    tail = np.zeros(TAIL_BITS, dtype=np.int64)
    tail[0:6:2], tail[1:6:2] = ti1, tp1
    tail[6:12:2], tail[7:12:2] = ti2, tp2
    total = int(info.sum() + parity1.sum() + parity2.sum() + tail.sum())
    return TurboCodeword(
        systematic=info,
        parity1=parity1,
        parity2=parity2,
        tail=tail,
        total_weight=total,
        info_weight=int(info.sum()),
    )


def code_rate(L: int) -> Fraction:
    """Exact coding rate L / (3L + 12) of the dual-terminated turbo code."""
    if L < 1:
        raise ValueError("L must be positive")
    return Fraction(L, 3 * L + 12)
