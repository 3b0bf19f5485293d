"""Monte-Carlo FER estimation over independent Rayleigh fading.

BPSK with perfect channel state information; per-bit fading amplitudes are
unit-power Rayleigh. SNR is interpreted as Eb/N0 in dB, so the noise
variance is 1/(2 * R_c * SNR_linear). Decoding is iterative Log-MAP with
the exact max* correction; iterations stop once every posterior LLR
magnitude clears the configured threshold.

Frames are seeded individually from (rng_seed, point index, frame index),
so results do not depend on scheduling or worker count.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .qpp import Permutation, invert
from .turbo import NEXT_STATE, PARITY, TAIL_INPUT, TAIL_BITS


@dataclass(frozen=True)
class SimConfig:
    L: int
    perm: Permutation
    snr_points_db: tuple
    max_iterations: int = 8
    llr_stop_threshold: float = 10.0
    min_error_frames: int = 100
    max_frames: int = 10_000_000
    rng_seed: int = 0
    round_size: int = 512


@dataclass(frozen=True)
class FerPoint:
    snr_db: float
    frames_sent: int
    frames_in_error: int
    fer: float
    avg_iterations: float
    low_confidence: bool = False


def noise_sigma2(L: int, snr_db: float) -> float:
    rc = L / (3 * L + 12)
    return 1.0 / (2.0 * rc * 10.0 ** (snr_db / 10.0))


def channel_pass(codeword_bits, snr_db: float, rng) -> np.ndarray:
    """Rayleigh-faded BPSK channel LLRs with perfect CSI.

    Bit b maps to 1 - 2b; the returned LLR is 2*a*y/sigma^2, positive
    meaning bit 0. The code rate implied by the codeword length sets the
    noise variance.
    """
    bits = np.asarray(codeword_bits, dtype=np.int64)
    L = (bits.size - TAIL_BITS) // 3
    sigma2 = noise_sigma2(L, snr_db)
    x = 1.0 - 2.0 * bits
    a = rng.rayleigh(scale=1.0 / math.sqrt(2.0), size=bits.size)
    y = a * x + rng.normal(scale=math.sqrt(sigma2), size=bits.size)
    return 2.0 * a * y / sigma2


def _split_llrs(llrs, L):
    sys_l = llrs[:L]
    par1_l = llrs[L : 2 * L]
    par2_l = llrs[2 * L : 3 * L]
    tail = llrs[3 * L :]
    ts1, tp1 = tail[0:6:2], tail[1:6:2]
    ts2, tp2 = tail[6:12:2], tail[7:12:2]
    return sys_l, par1_l, par2_l, ts1, tp1, ts2, tp2


def log_map_decode(llrs, perm: Permutation, max_iterations: int = 8, llr_stop_threshold: float = 10.0):
    """Iterative two-decoder Log-MAP; returns (bits, posterior LLRs, iterations).

    Tail LLRs feed only their own constituent decoder. The second decoder
    reads systematic LLRs through the interleaver and its extrinsic output
    is mapped back the same way.
    """
    llrs = np.ascontiguousarray(llrs, dtype=np.float64)
    table = perm.table
    L = table.size
    if llrs.size != 3 * L + TAIL_BITS:
        raise ValueError(f"expected {3 * L + TAIL_BITS} LLRs, got {llrs.size}")
    sys_l, par1_l, par2_l, ts1, tp1, ts2, tp2 = _split_llrs(llrs, L)
    sys2_l = np.ascontiguousarray(sys_l[table])
    post1 = np.zeros(L)
    post2 = np.zeros(L)
    ext2_info = np.zeros(L)  # decoder-2 extrinsic, info order
    posterior = np.zeros(L)
    used = max_iterations
    for it in range(1, max_iterations + 1):
        apriori1 = ext2_info
        _kernels.bcjr_log_map(sys_l, par1_l, ts1, tp1, apriori1, NEXT_STATE, PARITY, TAIL_INPUT, post1)
        ext1_info = post1 - sys_l - apriori1
        apriori2 = np.ascontiguousarray(ext1_info[table])
        _kernels.bcjr_log_map(sys2_l, par2_l, ts2, tp2, apriori2, NEXT_STATE, PARITY, TAIL_INPUT, post2)
        ext2 = post2 - sys2_l - apriori2
        ext2_info = np.zeros(L)
        ext2_info[table] = ext2
        posterior = np.zeros(L)
        posterior[table] = post2
        if np.all(np.abs(posterior) > llr_stop_threshold):
            used = it
            break
    bits = (posterior < 0).astype(np.int64)
    return bits, posterior, used


def _run_frames(args):
    (L, table, snr_db, seed, point_idx, start, count,
     max_iterations, llr_stop_threshold) = args
    perm = Permutation(table)
    errors = 0
    iter_sum = 0
    out = np.zeros(3 * L + TAIL_BITS, dtype=np.int64)
    for f in range(start, start + count):
        rng = np.random.default_rng((seed, point_idx, f))
        info = rng.integers(0, 2, size=L)
        _kernels.encode_kernel(info, table, NEXT_STATE, PARITY, TAIL_INPUT, out)
        llrs = channel_pass(out, snr_db, rng)
        decided, _, used = log_map_decode(llrs, perm, max_iterations, llr_stop_threshold)
        iter_sum += used
        if not np.array_equal(decided, info):
            errors += 1
    return errors, count, iter_sum


def monte_carlo_fer(config: SimConfig, jobs: int = 1) -> list[FerPoint]:
    """Estimate FER at each SNR point.

    Frames advance in fixed-size rounds and the stop condition (enough error
    frames, or the frame budget) is evaluated only at round boundaries, so
    the simulated frame set is identical for any worker count.
    """
    points = []
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for p_idx, snr_db in enumerate(config.snr_points_db):
            frames = errors = iter_sum = 0
            while True:
                round_frames = min(config.round_size, config.max_frames - frames)
                if round_frames <= 0:
                    break
                tasks = _frame_blocks(config, p_idx, snr_db, frames, round_frames, jobs)
                results = pool.map(_run_frames, tasks) if pool else map(_run_frames, tasks)
                for e, c, s in results:
                    errors += e
                    frames += c
                    iter_sum += s
                if errors >= config.min_error_frames:
                    break
            points.append(
                FerPoint(
                    snr_db=snr_db,
                    frames_sent=frames,
                    frames_in_error=errors,
                    fer=errors / frames if frames else 0.0,
                    avg_iterations=iter_sum / frames if frames else 0.0,
                    low_confidence=errors < config.min_error_frames,
                )
            )
    finally:
        if pool:
            pool.shutdown()
    return points


def _frame_blocks(config, p_idx, snr_db, start, count, jobs):
    block = max(1, math.ceil(count / max(1, jobs)))
    tasks = []
    off = 0
    while off < count:
        n = min(block, count - off)
        tasks.append(
            (config.L, config.perm.table, snr_db, config.rng_seed, p_idx,
             start + off, n, config.max_iterations, config.llr_stop_threshold)
        )
        off += n
    return tasks
