"""Truncated union bounds over independent Rayleigh fading and the
optimistic-update abort predicate used by the class search.

Both bounds share the per-distance factor f = 1/(1 + R_c * SNR) with SNR the
linear signal-to-noise ratio and R_c = L/(3L + 12): FER sums N_i * f^d_i,
BER sums (w_i / L) * f^d_i, each halved.
"""

import math
from dataclasses import dataclass

from .spectrum import DistanceSpectrum


@dataclass(frozen=True)
class TubParams:
    snr_db: float
    L: int
    M: int


def _decay_factor(L: int, snr_db: float) -> float:
    rc = L / (3 * L + 12)
    return 1.0 / (1.0 + rc * 10.0 ** (snr_db / 10.0))


def _pairs(spectrum) -> list[tuple[int, float]]:
    if isinstance(spectrum, DistanceSpectrum):
        return [(t.d, t.N) for t in spectrum.terms]
    return [(d, n) for d, n, *_ in spectrum]


def tub_fer(spectrum, L: int, snr_db: float) -> float:
    """0.5 * sum of N_i * f^d_i over the spectrum terms."""
    pairs = _pairs(spectrum)
    if not pairs:
        raise ValueError("spectrum is empty")
    f = _decay_factor(L, snr_db)
    return 0.5 * math.fsum(n * f**d for d, n in pairs)


def tub_ber(spectrum, L: int, snr_db: float) -> float:
    """0.5 * sum of (w_i / L) * f^d_i over the spectrum terms."""
    if isinstance(spectrum, DistanceSpectrum):
        triples = [(t.d, t.w) for t in spectrum.terms]
    else:
        triples = [(d, w) for d, _, w in spectrum]
    if not triples:
        raise ValueError("spectrum is empty")
    f = _decay_factor(L, snr_db)
    return 0.5 * math.fsum((w / L) * f**d for d, w in triples)


def optimistic_updates(spectrum, M: int) -> list[list[tuple[int, int]]]:
    """The M most favourable single-step futures of a truncated spectrum.

    Hypothetical j prepends j new distances immediately below d_1, each with
    multiplicity 1, and keeps the first M - j existing terms. Distances clamp
    at 1, so a hypothetical may repeat distance 1; the results are plain
    (d, N) pair lists, not spectrum values.

    A snapshot shorter than M is treated as padded with zero-mass terms:
    only its real terms are shifted and kept.
    """
    pairs = _pairs(spectrum)
    if not pairs:
        raise ValueError("spectrum is empty")
    d1 = pairs[0][0]
    out = []
    for j in range(1, M + 1):
        hyp = [(max(1, d1 - j + m), 1) for m in range(j)]
        hyp.extend(pairs[: M - j])
        out.append(hyp)
    return out


def should_abort(snapshot, fer_min: float, L: int, snr_db: float, M: int | None = None) -> bool:
    """Abort iff neither the snapshot nor any optimistic future beats fer_min.

    Nothing can be ruled out while the snapshot is empty. When its own bound
    is already below fer_min the computation must continue; otherwise every
    hypothetical future is evaluated and abortion requires all of them to
    stay at or above fer_min.
    """
    if fer_min <= 0:
        raise ValueError("fer_min must be positive")
    pairs = _pairs(snapshot)
    if not pairs:
        return False
    if M is None:
        if not isinstance(snapshot, DistanceSpectrum):
            raise ValueError("M is required for plain pair lists")
        M = snapshot.capacity
    if tub_fer(pairs, L, snr_db) < fer_min:
        return False
    return all(tub_fer(h, L, snr_db) >= fer_min for h in optimistic_updates(pairs, M))
