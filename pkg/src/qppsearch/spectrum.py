"""Exact truncated distance spectra of the dual-terminated turbo code.

The engine enumerates every information pattern whose codeword weight can
still fall within the working threshold: a depth-first walk of the first
encoder's trellis, bounded by precomputed per-state completion weights,
with the second encoder's parity added at each surviving leaf. While fewer
than the requested number of terms are known the threshold is the
configured weight ceiling; afterwards it is the current last distance, so
the enumeration tightens itself as terms fill in.

Every change to the truncated (d, N) head is reported to the caller's
event consumer, which may stop the run early.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .qpp import Permutation, invert
from .turbo import NEXT_STATE, PARITY, TAIL_INPUT

DEFAULT_WEIGHT_CEILING = 45
DEFAULT_NODE_BUDGET = 2_000_000_000
_CHUNK_LEAVES = 4096
_CHUNK_NODES = 1 << 22


class BudgetExceeded(RuntimeError):
    """The engine hit its node budget, or the ceiling proved too low to
    establish the requested number of terms; carries the partial spectrum."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SpectrumTerm:
    d: int
    N: int
    w: int


@dataclass(frozen=True)
class DistanceSpectrum:
    terms: tuple
    capacity: int
    complete: bool = False

    def __post_init__(self):
        ds = [t.d for t in self.terms]
        if ds != sorted(set(ds)):
            raise ValueError("terms must be strictly increasing in d")
        if len(self.terms) > self.capacity:
            raise ValueError("more terms than capacity")

    @property
    def d_min(self) -> int:
        return self.terms[0].d

    def as_tuples(self):
        return [(t.d, t.N, t.w) for t in self.terms]

    def __str__(self):
        body = ", ".join(f"{t.d}/{t.N}/{t.w}" for t in self.terms)
        flag = "" if self.complete else " (partial)"
        return f"[{body}]{flag}"


@dataclass(frozen=True)
class SpectrumEvent:
    snapshot: DistanceSpectrum
    stage: int


@dataclass
class SpectrumRun:
    """Outcome of one engine run: final or last-seen spectrum plus counters."""

    spectrum: DistanceSpectrum
    aborted: bool
    nodes: int
    updates: int


def record_codeword(spectrum: DistanceSpectrum, d: int, w_info: int) -> DistanceSpectrum:
    """Fold one codeword into the truncated spectrum.

    Matching distance: bump N and w. Smaller than the last kept distance
    (or spare capacity): insert, dropping beyond capacity. Otherwise the
    spectrum is returned unchanged.
    """
    if d < 1 or w_info < 1:
        raise ValueError("codeword weights must be positive")
    terms = list(spectrum.terms)
    for i, t in enumerate(terms):
        if t.d == d:
            terms[i] = SpectrumTerm(d, t.N + 1, t.w + w_info)
            return replace(spectrum, terms=tuple(terms))
        if t.d > d:
            terms.insert(i, SpectrumTerm(d, 1, w_info))
            return replace(spectrum, terms=tuple(terms[: spectrum.capacity]))
    if len(terms) < spectrum.capacity:
        terms.append(SpectrumTerm(d, 1, w_info))
        return replace(spectrum, terms=tuple(terms))
    return spectrum


class _Recorder:
    def __init__(self, capacity, ceiling):
        self.spec = DistanceSpectrum(terms=(), capacity=capacity)
        self.ceiling = ceiling
        self.updates = 0

    @property
    def threshold(self) -> int:
        if len(self.spec.terms) == self.spec.capacity:
            return self.spec.terms[-1].d
        return self.ceiling

    def add(self, d, w_info) -> bool:
        new = record_codeword(self.spec, d, w_info)
        head_changed = [(t.d, t.N) for t in new.terms] != [(t.d, t.N) for t in self.spec.terms]
        self.spec = new
        if head_changed:
            self.updates += 1
        return head_changed


def exact_spectrum(
    perm: Permutation,
    capacity: int,
    on_update=None,
    *,
    weight_ceiling: int = DEFAULT_WEIGHT_CEILING,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SpectrumRun:
    """Compute the first `capacity` spectrum terms for this interleaver.

    on_update receives a SpectrumEvent whenever the truncated (d, N) head
    changes and may return truthy to stop the run; the result then carries
    aborted=True and the last snapshot. BudgetExceeded is raised when the
    node budget runs out or when full enumeration under the weight ceiling
    cannot establish `capacity` terms.
    """
    if capacity < 1:
        raise ValueError("capacity must be >= 1")
    L = perm.L
    inv = invert(perm).table
    rec = _Recorder(capacity, weight_ceiling)

    coast = _kernels.coast_table(L)
    wbound = _kernels.continuation_bounds(L, coast)
    thr_d = np.zeros(capacity, dtype=np.int64)
    thr_meta = np.zeros(1, dtype=np.int64)
    t_st = np.zeros(L + 2, dtype=np.int64)
    s_st = np.zeros(L + 2, dtype=np.int64)
    a_st = np.zeros(L + 2, dtype=np.int64)
    ph_st = np.zeros(L + 2, dtype=np.int64)
    by1_st = np.zeros(L + 2, dtype=np.int64)
    ones = np.zeros(L + 1, dtype=np.int64)
    scratch = np.zeros(L + 1, dtype=np.int64)
    leaf_d = np.zeros(_CHUNK_LEAVES, dtype=np.int64)
    leaf_w = np.zeros(_CHUNK_LEAVES, dtype=np.int64)
    sp, n1 = 1, 0
    nodes_total = 0

    while True:
        cap = min(_CHUNK_NODES, node_budget - nodes_total)
        sp, n1, n_leaves, nodes, status = _kernels.dfs_chunk(
            L, capacity, weight_ceiling, thr_d, thr_meta, wbound, coast, inv,
            NEXT_STATE, _kernels.STEP_W1, _kernels.TAIL_W,
            _kernels.ZRUN_STATE, _kernels.ZRUN_W,
            t_st, s_st, a_st, ph_st, by1_st, sp, n1, ones, scratch,
            leaf_d, leaf_w, cap,
        )
        nodes_total += nodes
        for i in range(n_leaves):
            changed = rec.add(int(leaf_d[i]), int(leaf_w[i]))
            if changed and on_update is not None:
                event = SpectrumEvent(snapshot=rec.spec, stage=nodes_total)
                if on_update(event):
                    return SpectrumRun(rec.spec, aborted=True, nodes=nodes_total, updates=rec.updates)
        if status == _kernels.STATUS_DONE:
            break
        if status == _kernels.STATUS_BUDGET and nodes_total >= node_budget:
            raise BudgetExceeded(
                f"node budget {node_budget} exhausted at L={L}", partial=rec.spec
            )
    if len(rec.spec.terms) < capacity:
        raise BudgetExceeded(
            f"only {len(rec.spec.terms)} of {capacity} terms exist under weight ceiling "
            f"{weight_ceiling} at L={L}",
            partial=rec.spec,
        )
    final = replace(rec.spec, complete=True)
    return SpectrumRun(final, aborted=False, nodes=nodes_total, updates=rec.updates)


def brute_force_spectrum(perm: Permutation, capacity: int) -> DistanceSpectrum:
    """Oracle: tally every nonzero information word. Enforced to L <= 20."""
    L = perm.L
    if L > 20:
        raise ValueError("brute force is limited to L <= 20")
    counts, wsums = _kernels.weight_histogram(
        L, perm.table, NEXT_STATE, PARITY, TAIL_INPUT
    )
    terms = []
    for d in range(1, counts.size):
        if counts[d]:
            terms.append(SpectrumTerm(int(d), int(counts[d]), int(wsums[d])))
            if len(terms) == capacity:
                break
    return DistanceSpectrum(terms=tuple(terms), capacity=capacity, complete=True)
