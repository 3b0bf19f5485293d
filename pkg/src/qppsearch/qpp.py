"""Quadratic permutation polynomial algebra.

Evaluation, validity, spread and nonlinearity metrics, inversion,
reducibility to linear polynomials, class enumeration, and grouping of
candidates that share a distance spectrum (identical or inverse
permutations).
"""

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

LS_QPP = "ls"
D_TARGET_MAX_ZETA = "d-target"
ALL_QPP = "all"


class NotAPermutation(ValueError):
    """The coefficient map is not a bijection; carries the first collision."""

    def __init__(self, qpp, i, j):
        self.qpp = qpp
        self.collision = (i, j)
        super().__init__(f"{qpp} maps {i} and {j} to the same value")


class EmptyClass(ValueError):
    """A class enumeration produced no candidates."""


@dataclass(frozen=True, order=True)
class Qpp:
    """Coefficient triple of x -> (q0 + q1*x + q2*x^2) mod L."""

    L: int
    q1: int
    q2: int
    q0: int = 0

    def __post_init__(self):
        if self.L < 2:
            raise ValueError("L must be >= 2")
        for name in ("q0", "q1", "q2"):
            c = getattr(self, name)
            if not 0 <= c < self.L:
                raise ValueError(f"{name}={c} outside 0..{self.L - 1}")

    def __str__(self):
        head = f"{self.q0}+" if self.q0 else ""
        return f"{head}{self.q1}x+{self.q2}x^2 mod {self.L}"


@dataclass(frozen=True)
class Permutation:
    """Explicit length-L bijection on {0..L-1}."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        object.__setattr__(self, "table", t)

    @property
    def L(self) -> int:
        return int(self.table.size)

    def __eq__(self, other):
        return isinstance(other, Permutation) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __getitem__(self, x: int) -> int:
        return int(self.table[x])


@dataclass(frozen=True)
class SpreadMetrics:
    D: int
    zeta: int
    zeta_refined: int


@dataclass(frozen=True)
class ClassSelector:
    kind: str
    d_target: int | None = None
    exclude_lpp_reducible: bool = True
    include_q0: bool = False

    def __post_init__(self):
        if self.kind not in (LS_QPP, D_TARGET_MAX_ZETA, ALL_QPP):
            raise ValueError(f"unknown class kind {self.kind!r}")
        if (self.d_target is not None) != (self.kind == D_TARGET_MAX_ZETA):
            raise ValueError("d_target must be given exactly for the d-target class")


@dataclass(frozen=True)
class QppGroup:
    """Candidates whose permutations are identical or mutually inverse."""

    members: tuple
    representative: Qpp
    permutation: Permutation = field(compare=False)


def evaluate(qpp: Qpp, x: int) -> int:
    """Evaluate the polynomial at x. Python ints, so no overflow at any L."""
    if not 0 <= x < qpp.L:
        raise ValueError(f"x={x} outside 0..{qpp.L - 1}")
    return (qpp.q0 + qpp.q1 * x + qpp.q2 * x * x) % qpp.L


def _table_of(qpp: Qpp) -> np.ndarray:
    x = np.arange(qpp.L, dtype=np.int64)
    # x^2 mod L first keeps intermediates under L^2 <= 2^62 for L <= 2^20
    return (qpp.q0 + qpp.q1 * x + qpp.q2 * ((x * x) % qpp.L)) % qpp.L


def is_valid(qpp: Qpp) -> bool:
    """True iff the coefficient map is a bijection (checked by evaluation)."""
    t = _table_of(qpp)
    return bool(np.unique(t).size == qpp.L)


def permutation_of(qpp: Qpp) -> Permutation:
    """Full evaluation table; raises NotAPermutation on the first collision."""
    t = _table_of(qpp)
    seen = np.full(qpp.L, -1, dtype=np.int64)
    for x, y in enumerate(t):
        if seen[y] >= 0:
            raise NotAPermutation(qpp, int(seen[y]), x)
        seen[y] = x
    return Permutation(t)


def lee_distance(L: int, i: int, j: int) -> int:
    """Circular distance min((i-j) mod L, (j-i) mod L)."""
    if not (0 <= i < L and 0 <= j < L):
        raise ValueError("indices outside 0..L-1")
    d = (i - j) % L
    return min(d, L - d)


def spread(perm: Permutation) -> int:
    """Minimum over point pairs (i, pi(i)) of the Lee-metric sum.

    Offsets are scanned in increasing order; any pair at offset delta costs
    at least delta, so the scan stops once delta reaches the best sum so far.
    """
    t = perm.table
    L = t.size
    best = L
    for delta in range(1, L // 2 + 1):
        if delta >= best:
            break
        dv = np.abs(t - np.roll(t, -delta))
        dv = np.minimum(dv, L - dv)
        cand = delta + int(dv.min())
        if cand < best:
            best = cand
    return best


def nonlinearity(qpp: Qpp) -> SpreadMetrics:
    """Spread plus the period and refined nonlinearity of the quadratic term."""
    zeta = qpp.L // math.gcd(2 * qpp.q2, qpp.L)
    vals = {(qpp.q2 * x * x) % qpp.L for x in range(zeta)}
    return SpreadMetrics(D=spread(permutation_of(qpp)), zeta=zeta, zeta_refined=len(vals))


def invert(perm: Permutation) -> Permutation:
    inv = np.empty(perm.L, dtype=np.int64)
    inv[perm.table] = np.arange(perm.L, dtype=np.int64)
    return Permutation(inv)


def is_lpp_reducible(qpp: Qpp) -> bool:
    """True iff the permutation coincides with some linear polynomial.

    A permutation equals a linear map iff it equals the unique linear map
    through its first two points, so one O(L) comparison decides.
    """
    t = _table_of(qpp)
    L = qpp.L
    slope = (int(t[1]) - int(t[0])) % L
    x = np.arange(L, dtype=np.int64)
    return bool(np.array_equal((t[0] + slope * x) % L, t))


@njit(cache=True)
def _valid_pairs(L):
    """All (q1, q2) with q2 != 0 whose map is a bijection."""
    out = np.empty((L * L, 2), dtype=np.int64)
    n = 0
    sq = np.empty(L, dtype=np.int64)
    for x in range(L):
        sq[x] = (x * x) % L
    seen = np.empty(L, dtype=np.int64)
    for q1 in range(L):
        for q2 in range(1, L):
            for i in range(L):
                seen[i] = 0
            ok = True
            for x in range(L):
                y = (q1 * x + q2 * sq[x]) % L
                if seen[y]:
                    ok = False
                    break
                seen[y] = 1
            if ok:
                out[n, 0] = q1
                out[n, 1] = q2
                n += 1
    return out[:n]


def enumerate_class(L: int, selector: ClassSelector) -> list[Qpp]:
    """All admissible QPPs of length L for the given class, sorted by (q1, q2).

    Pure linear maps (q2 = 0) are never candidates; reducible quadratics are
    dropped unless the selector keeps them. The LS class keeps maximal-spread
    candidates; the d-target class keeps spread == d_target and, among those,
    maximal refined nonlinearity.
    """
    if L < 8:
        raise ValueError("class enumeration requires L >= 8")
    q0_values = range(L) if selector.include_q0 else (0,)
    candidates = []
    for q1, q2 in _valid_pairs(L):
        for q0 in q0_values:
            q = Qpp(L, int(q1), int(q2), q0=int(q0))
            if selector.exclude_lpp_reducible and is_lpp_reducible(q):
                continue
            candidates.append(q)
    if selector.kind == LS_QPP:
        spreads = [spread(permutation_of(q)) for q in candidates]
        if spreads:
            dmax = max(spreads)
            candidates = [q for q, d in zip(candidates, spreads) if d == dmax]
    elif selector.kind == D_TARGET_MAX_ZETA:
        candidates = [q for q in candidates if spread(permutation_of(q)) == selector.d_target]
        if candidates:
            metrics = [nonlinearity(q).zeta_refined for q in candidates]
            zmax = max(metrics)
            candidates = [q for q, z in zip(candidates, metrics) if z == zmax]
    if not candidates:
        raise EmptyClass(f"no candidates at L={L} for class {selector.kind!r}")
    return sorted(candidates, key=lambda q: (q.q1, q.q2, q.q0))


def group_candidates(candidates: list[Qpp]) -> list[QppGroup]:
    """Partition candidates by spectrum equivalence.

    Two candidates share a group iff their permutation tables are identical
    or one is the inverse of the other. The representative is the member
    with the lowest (q1, q2); groups are returned in representative order.
    """
    if not candidates:
        return []
    L = candidates[0].L
    if any(q.L != L for q in candidates):
        raise ValueError("candidates must share L")
    buckets: dict[bytes, list[tuple[Qpp, Permutation]]] = {}
    for q in candidates:
        p = permutation_of(q)
        key_fwd = p.table.tobytes()
        key_inv = invert(p).table.tobytes()
        key = min(key_fwd, key_inv)
        buckets.setdefault(key, []).append((q, p))
    groups = []
    for pairs in buckets.values():
        members = tuple(sorted((q for q, _ in pairs), key=lambda q: (q.q1, q.q2, q.q0)))
        rep = members[0]
        perm = next(p for q, p in pairs if q == rep)
        groups.append(QppGroup(members=members, representative=rep, permutation=perm))
    groups.sort(key=lambda g: (g.representative.q1, g.representative.q2, g.representative.q0))
    return groups
