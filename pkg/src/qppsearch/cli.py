"""Command-line surface: metrics, spectrum, search, simulate, figure-data.

Search results go to CSV plus a JSON run manifest; long searches also write
a per-group JSONL progress file that later runs can resume from.
"""

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .bounds import tub_ber, tub_fer
from .lte import DEFAULTS, defaults_for
from .qpp import (
    ALL_QPP,
    D_TARGET_MAX_ZETA,
    LS_QPP,
    ClassSelector,
    EmptyClass,
    NotAPermutation,
    Qpp,
    is_lpp_reducible,
    nonlinearity,
    permutation_of,
)
from .search import GroupReport, SearchConfig, SearchRecord, search
from .simulate import SimConfig, monte_carlo_fer
from .spectrum import BudgetExceeded, DistanceSpectrum, SpectrumTerm, exact_spectrum

EXIT_OK = 0
EXIT_INVALID_POLY = 2
EXIT_EMPTY_CLASS = 3
EXIT_BUDGET = 4

CLASS_KINDS = {"ls": LS_QPP, "d-target": D_TARGET_MAX_ZETA, "all": ALL_QPP}

SEARCH_HEADER = [
    "L", "snr_db", "num_dist", "class", "winner_q1", "winner_q2", "D",
    "zeta_refined", "d_min", "N1", "w1", "tub_ber_e7", "tub_fer_e5",
    "num_polynomials", "ratio",
]


def _sig(value, digits=5):
    return f"{value:.{digits}g}"


def search_csv_row(record: SearchRecord) -> list[str]:
    head = record.spectrum.terms[0]
    return [
        str(record.L),
        _sig(record.snr_db),
        str(record.M),
        record.class_kind,
        str(record.winner.q1),
        str(record.winner.q2),
        str(record.D),
        str(record.zeta_refined),
        str(head.d),
        str(head.N),
        str(head.w),
        _sig(record.tub_ber * 1e7),
        _sig(record.tub_fer * 1e5),
        str(record.group_size),
        "" if record.ratio is None else f"{record.ratio:.2f}",
    ]


def record_to_dict(record: SearchRecord) -> dict:
    d = {
        "L": record.L,
        "class": record.class_kind,
        "snr_db": record.snr_db,
        "num_dist": record.M,
        "winner": {"q1": record.winner.q1, "q2": record.winner.q2, "q0": record.winner.q0},
        "D": record.D,
        "zeta_refined": record.zeta_refined,
        "spectrum": record.spectrum.as_tuples(),
        "tub_ber": record.tub_ber,
        "tub_fer": record.tub_fer,
        "group_size": record.group_size,
        "groups_total": record.groups_total,
        "groups_aborted": record.groups_aborted,
        "groups_budget_exceeded": record.groups_budget_exceeded,
        "fer_baseline": record.fer_baseline,
        "ratio": record.ratio,
        "total_updates": record.total_updates,
        "total_nodes": record.total_nodes,
    }
    return d


def record_from_dict(d: dict) -> SearchRecord:
    terms = tuple(SpectrumTerm(*t) for t in d["spectrum"])
    return SearchRecord(
        L=d["L"],
        class_kind=d["class"],
        snr_db=d["snr_db"],
        M=d["num_dist"],
        winner=Qpp(d["L"], d["winner"]["q1"], d["winner"]["q2"], q0=d["winner"]["q0"]),
        D=d["D"],
        zeta_refined=d["zeta_refined"],
        spectrum=DistanceSpectrum(terms=terms, capacity=d["num_dist"], complete=True),
        tub_ber=d["tub_ber"],
        tub_fer=d["tub_fer"],
        group_size=d["group_size"],
        groups_total=d["groups_total"],
        groups_aborted=d["groups_aborted"],
        groups_budget_exceeded=d["groups_budget_exceeded"],
        fer_baseline=d["fer_baseline"],
        ratio=d["ratio"],
        total_updates=d["total_updates"],
        total_nodes=d["total_nodes"],
    )


def _parse_lengths(spec: str) -> list[int]:
    out = []
    for part in spec.split(","):
        part = part.strip()
        if ":" in part:
            lo, hi = part.split(":")
            out.extend(L for L in sorted(DEFAULTS) if int(lo) <= L <= int(hi))
        else:
            out.append(int(part))
    return out


def _selector_from_args(args) -> ClassSelector:
    kind = CLASS_KINDS[args.class_]
    return ClassSelector(
        kind=kind,
        d_target=args.d_target if kind == D_TARGET_MAX_ZETA else None,
        exclude_lpp_reducible=not args.keep_lpp_reducible,
    )


def cmd_metrics(args) -> int:
    q = Qpp(args.length, args.q1, args.q2, q0=args.q0)
    try:
        permutation_of(q)
    except NotAPermutation as exc:
        print(json.dumps({"L": q.L, "q1": q.q1, "q2": q.q2, "q0": q.q0, "valid": False,
                          "collision": list(exc.collision)}))
        return EXIT_INVALID_POLY
    m = nonlinearity(q)
    print(json.dumps({
        "L": q.L, "q1": q.q1, "q2": q.q2, "q0": q.q0, "valid": True,
        "D": m.D, "zeta": m.zeta, "zeta_refined": m.zeta_refined,
        "lpp_reducible": is_lpp_reducible(q),
    }))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    q = Qpp(args.length, args.q1, args.q2, q0=args.q0)
    try:
        perm = permutation_of(q)
    except NotAPermutation:
        print(f"error: {q} is not a permutation", file=sys.stderr)
        return EXIT_INVALID_POLY
    try:
        run = exact_spectrum(perm, args.num_dist, weight_ceiling=args.ceiling,
                             node_budget=args.budget)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    lines = ["d,N,w"] + [f"{t.d},{t.N},{t.w}" for t in run.spectrum.terms]
    _write_or_print(args.out, "\n".join(lines) + "\n")
    print(f"spectrum of {q}: {run.spectrum}", file=sys.stderr)
    return EXIT_OK


def cmd_search(args) -> int:
    lengths = _parse_lengths(args.length)
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    manifest_records = []
    group_stats = []
    try:
        configs = [_search_config(args, L) for L in lengths]
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_CLASS
    try:
        if args.jobs > 1 and len(configs) > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                records = list(pool.map(_search_worker, configs))
        else:
            records = [_run_one_search(cfg, out_dir) for cfg in configs]
    except EmptyClass as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_CLASS
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    for record in records:
        rows.append(search_csv_row(record))
        manifest_records.append(record_to_dict(record))
        group_stats.append({
            "L": record.L,
            "groups_total": record.groups_total,
            "groups_aborted": record.groups_aborted,
            "groups_budget_exceeded": record.groups_budget_exceeded,
        })
    csv_text = ",".join(SEARCH_HEADER) + "\n" + "\n".join(",".join(r) for r in rows) + "\n"
    _write_or_print(out_dir / "search.csv" if out_dir else None, csv_text)
    if out_dir:
        manifest = {
            "tool": "qppsearch",
            "version": __version__,
            "schema": 1,
            "created_unix": int(time.time()),
            "config": {
                "lengths": lengths,
                "class": args.class_,
                "d_target": args.d_target,
                "defaults_source": "builtin-table",
            },
            "records": manifest_records,
            "group_stats": group_stats,
        }
        (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2))
    return EXIT_OK


def _search_config(args, L: int) -> SearchConfig:
    if L in DEFAULTS:
        row = defaults_for(L)
        snr = args.snr_db if args.snr_db is not None else row.snr_db
        M = args.num_dist if args.num_dist is not None else row.num_dist
        baseline = None if args.no_baseline else row.baseline
    else:
        if args.snr_db is None or args.num_dist is None:
            raise KeyError(f"L={L} has no defaults; pass --snr-db and --num-dist")
        snr, M, baseline = args.snr_db, args.num_dist, None
    return SearchConfig(
        L=L,
        selector=_selector_from_args(args),
        snr_db=snr,
        M=M,
        baseline=baseline,
        node_budget=args.budget,
        weight_ceiling=args.ceiling,
    )


def _search_worker(config: SearchConfig) -> SearchRecord:
    return search(config)


def _progress_path(out_dir: Path, config: SearchConfig) -> Path:
    return out_dir / f"progress-L{config.L}-{config.selector.kind}.jsonl"


def _run_one_search(config: SearchConfig, out_dir: Path | None) -> SearchRecord:
    resume = []
    progress = _progress_path(out_dir, config) if out_dir else None
    if progress and progress.exists():
        for line in progress.read_text().splitlines():
            resume.append(_report_from_dict(json.loads(line)))
    handle = progress.open("a") if progress else None
    done_indices = {r.index for r in resume}

    try:
        record = search(config, resume_reports=resume)
        if handle:
            for rep in record.group_reports:
                if rep.index not in done_indices:
                    handle.write(json.dumps(_report_to_dict(rep)) + "\n")
    finally:
        if handle:
            handle.close()
    return record


def _report_to_dict(rep: GroupReport) -> dict:
    return {
        "index": rep.index,
        "rep": [rep.representative.L, rep.representative.q1, rep.representative.q2,
                rep.representative.q0],
        "members": rep.members,
        "outcome": rep.outcome,
        "fer_min_at_decision": rep.fer_min_at_decision,
        "tub_fer": rep.tub_fer,
        "spectrum": None if rep.spectrum is None else
            {"terms": rep.spectrum.as_tuples(), "capacity": rep.spectrum.capacity,
             "complete": rep.spectrum.complete},
        "updates": rep.updates,
        "nodes": rep.nodes,
    }


def _report_from_dict(d: dict) -> GroupReport:
    spec = None
    if d["spectrum"] is not None:
        spec = DistanceSpectrum(
            terms=tuple(SpectrumTerm(*t) for t in d["spectrum"]["terms"]),
            capacity=d["spectrum"]["capacity"],
            complete=d["spectrum"]["complete"],
        )
    L, q1, q2, q0 = d["rep"]
    return GroupReport(
        index=d["index"],
        representative=Qpp(L, q1, q2, q0=q0),
        members=d["members"],
        outcome=d["outcome"],
        fer_min_at_decision=d["fer_min_at_decision"],
        tub_fer=d["tub_fer"],
        spectrum=spec,
        updates=d["updates"],
        nodes=d["nodes"],
    )


def cmd_simulate(args) -> int:
    q = Qpp(args.length, args.q1, args.q2, q0=args.q0)
    try:
        perm = permutation_of(q)
    except NotAPermutation:
        print(f"error: {q} is not a permutation", file=sys.stderr)
        return EXIT_INVALID_POLY
    config = SimConfig(
        L=args.length,
        perm=perm,
        snr_points_db=tuple(float(s) for s in args.snr_db.split(",")),
        max_iterations=args.iterations,
        llr_stop_threshold=args.llr_stop,
        min_error_frames=args.min_errors,
        max_frames=args.max_frames,
        rng_seed=args.seed,
    )
    points = monte_carlo_fer(config, jobs=args.jobs)
    lines = ["snr_db,frames,errors,fer,avg_iterations,low_confidence"]
    for p in points:
        lines.append(
            f"{_sig(p.snr_db)},{p.frames_sent},{p.frames_in_error},"
            f"{p.fer:.6e},{p.avg_iterations:.4f},{int(p.low_confidence)}"
        )
    _write_or_print(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


FIGURE_KINDS = ("min-distance", "spread")


def cmd_figure_data(args) -> int:
    records = []
    for path in args.manifests:
        data = json.loads(Path(path).read_text())
        records.extend(data["records"])
    records.sort(key=lambda r: (r["L"], r["class"]))
    lines = ["L,series,value"]
    for r in records:
        if args.kind == "min-distance":
            lines.append(f"{r['L']},{r['class']},{r['spectrum'][0][0]}")
        else:
            lines.append(f"{r['L']},{r['class']},{r['D']}")
    _write_or_print(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _write_or_print(path, text: str):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qppsearch",
                                     description="QPP interleaver search toolkit for LTE turbo codes")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_poly_args(p):
        p.add_argument("--length", type=int, required=True)
        p.add_argument("--q1", type=int, required=True)
        p.add_argument("--q2", type=int, required=True)
        p.add_argument("--q0", type=int, default=0)

    p = sub.add_parser("metrics", help="spread, nonlinearity and validity of one polynomial")
    add_poly_args(p)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("spectrum", help="exact truncated distance spectrum of one polynomial")
    add_poly_args(p)
    p.add_argument("--num-dist", type=int, default=1)
    p.add_argument("--ceiling", type=int, default=45)
    p.add_argument("--budget", type=int, default=2_000_000_000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("search", help="minimum-TUB(FER) search over a class")
    p.add_argument("--length", required=True,
                   help="length, comma list, or lo:hi range over the defaults table")
    p.add_argument("--class", dest="class_", choices=sorted(CLASS_KINDS), default="ls")
    p.add_argument("--d-target", type=int, default=None)
    p.add_argument("--snr-db", type=float, default=None)
    p.add_argument("--num-dist", type=int, default=None)
    p.add_argument("--keep-lpp-reducible", action="store_true")
    p.add_argument("--no-baseline", action="store_true")
    p.add_argument("--ceiling", type=int, default=45)
    p.add_argument("--budget", type=int, default=2_000_000_000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("simulate", help="Monte-Carlo FER over Rayleigh fading")
    add_poly_args(p)
    p.add_argument("--snr-db", required=True, help="comma-separated dB values")
    p.add_argument("--iterations", type=int, default=8)
    p.add_argument("--llr-stop", type=float, default=10.0)
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("figure-data", help="columnar plot data from search manifests")
    p.add_argument("--kind", choices=FIGURE_KINDS, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("manifests", nargs="*")
    p.set_defaults(func=cmd_figure_data)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
