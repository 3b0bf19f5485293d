"""Pruned minimum-TUB(FER) search over an interleaver class.

Candidates are grouped by spectrum equivalence and visited in a fixed
order. The first group's spectrum is computed in full and seeds the running
minimum; every later group runs under an event consumer that stops the
engine as soon as no optimistic continuation of its partial spectrum could
beat that minimum. Completed groups that improve the minimum become the
incumbent winner.
"""

import math
from dataclasses import dataclass, field

from .bounds import should_abort, tub_ber, tub_fer
from .qpp import ClassSelector, Qpp, QppGroup, enumerate_class, group_candidates, permutation_of, nonlinearity, spread
from .spectrum import BudgetExceeded, DEFAULT_NODE_BUDGET, DEFAULT_WEIGHT_CEILING, DistanceSpectrum, exact_spectrum

ORDER_SPREAD_DESC = "spread-desc"
ORDER_COEF_ASC = "coef-asc"

OUTCOME_COMPLETED = "completed"
OUTCOME_ABORTED = "aborted"
OUTCOME_BUDGET = "budget-exceeded"


@dataclass(frozen=True)
class SearchConfig:
    L: int
    selector: ClassSelector
    snr_db: float
    M: int
    baseline: Qpp | None = None
    ordering: str = ORDER_SPREAD_DESC
    weight_ceiling: int = DEFAULT_WEIGHT_CEILING
    node_budget: int = DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class GroupReport:
    """Per-group outcome, kept for manifests and abort-soundness audits."""

    index: int
    representative: Qpp
    members: int
    outcome: str
    fer_min_at_decision: float
    tub_fer: float | None
    spectrum: DistanceSpectrum | None
    updates: int
    nodes: int


@dataclass
class SearchRecord:
    L: int
    class_kind: str
    snr_db: float
    M: int
    winner: Qpp
    D: int
    zeta_refined: int
    spectrum: DistanceSpectrum
    tub_ber: float
    tub_fer: float
    group_size: int
    groups_total: int
    groups_aborted: int
    groups_budget_exceeded: int = 0
    fer_baseline: float | None = None
    ratio: float | None = None
    total_updates: int = 0
    total_nodes: int = 0
    group_reports: list = field(default_factory=list, repr=False)


def order_groups(groups: list[QppGroup], policy: str) -> list[QppGroup]:
    """Deterministic visiting order; the default front-loads likely winners
    (large spread, then large refined nonlinearity) so pruning bites early."""
    def coef_key(g):
        return (g.representative.q1, g.representative.q2, g.representative.q0)

    if policy == ORDER_COEF_ASC:
        return sorted(groups, key=coef_key)
    if policy == ORDER_SPREAD_DESC:
        decorated = []
        for g in groups:
            m = nonlinearity(g.representative)
            decorated.append(((-m.D, -m.zeta_refined) + coef_key(g), g))
        decorated.sort(key=lambda pair: pair[0])
        return [g for _, g in decorated]
    raise ValueError(f"unknown ordering policy {policy!r}")


def baseline_fer(config: SearchConfig) -> float | None:
    """Full-spectrum TUB(FER) of the configured baseline polynomial."""
    if config.baseline is None:
        return None
    run = exact_spectrum(
        permutation_of(config.baseline),
        config.M,
        weight_ceiling=config.weight_ceiling,
        node_budget=config.node_budget,
    )
    return tub_fer(run.spectrum, config.L, config.snr_db)


def search(config: SearchConfig, *, prune: bool = True, resume_reports=None) -> SearchRecord:
    """Run the class search and report the minimum-TUB(FER) group.

    With prune=False every group's spectrum is computed in full (used to
    audit the abort rule). resume_reports replays previously finished
    GroupReports so an interrupted run continues at the next group index.
    """
    candidates = enumerate_class(config.L, config.selector)
    groups = order_groups(group_candidates(candidates), config.ordering)

    done: dict[int, GroupReport] = {r.index: r for r in resume_reports or []}
    fer_min = math.inf
    incumbent = None  # (tub, rep_key, group, spectrum, report)
    reports = []
    aborted = budget = updates_total = nodes_total = 0

    for idx, group in enumerate(groups):
        if idx in done:
            report = done[idx]
        else:
            report = _evaluate_group(config, idx, group, fer_min if prune else math.inf)
        reports.append(report)
        updates_total += report.updates
        nodes_total += report.nodes
        if report.outcome == OUTCOME_ABORTED:
            aborted += 1
            continue
        if report.outcome == OUTCOME_BUDGET:
            budget += 1
            continue
        rep = group.representative
        key = (rep.q1, rep.q2, rep.q0)
        if report.tub_fer < fer_min or (
            incumbent is not None and report.tub_fer == incumbent[0] and key < incumbent[1]
        ):
            fer_min = report.tub_fer
            incumbent = (report.tub_fer, key, group, report.spectrum, report)

    if incumbent is None:
        raise BudgetExceeded(
            f"no group completed within budget at L={config.L}", partial=None
        )
    tub, _, group, spec, _ = incumbent
    rep = group.representative
    metrics = nonlinearity(rep)
    fer_base = baseline_fer(config)
    record = SearchRecord(
        L=config.L,
        class_kind=config.selector.kind,
        snr_db=config.snr_db,
        M=config.M,
        winner=rep,
        D=metrics.D,
        zeta_refined=metrics.zeta_refined,
        spectrum=spec,
        tub_ber=tub_ber(spec, config.L, config.snr_db),
        tub_fer=tub,
        group_size=len(group.members),
        groups_total=len(groups),
        groups_aborted=aborted,
        groups_budget_exceeded=budget,
        fer_baseline=fer_base,
        ratio=None if fer_base is None else compare_to_baseline_value(fer_base, tub),
        total_updates=updates_total,
        total_nodes=nodes_total,
        group_reports=reports,
    )
    return record


def _evaluate_group(config: SearchConfig, idx: int, group: QppGroup, fer_min: float) -> GroupReport:
    def consumer(event):
        return should_abort(event.snapshot, fer_min, config.L, config.snr_db) if math.isfinite(fer_min) else False

    try:
        run = exact_spectrum(
            group.permutation,
            config.M,
            on_update=consumer,
            weight_ceiling=config.weight_ceiling,
            node_budget=config.node_budget,
        )
    except BudgetExceeded:
        return GroupReport(
            index=idx, representative=group.representative, members=len(group.members),
            outcome=OUTCOME_BUDGET, fer_min_at_decision=fer_min, tub_fer=None,
            spectrum=None, updates=0, nodes=0,
        )
    if run.aborted:
        return GroupReport(
            index=idx, representative=group.representative, members=len(group.members),
            outcome=OUTCOME_ABORTED, fer_min_at_decision=fer_min, tub_fer=None,
            spectrum=run.spectrum, updates=run.updates, nodes=run.nodes,
        )
    return GroupReport(
        index=idx, representative=group.representative, members=len(group.members),
        outcome=OUTCOME_COMPLETED, fer_min_at_decision=fer_min,
        tub_fer=tub_fer(run.spectrum, config.L, config.snr_db),
        spectrum=run.spectrum, updates=run.updates, nodes=run.nodes,
    )


def compare_to_baseline_value(fer_baseline: float, fer_winner: float) -> float:
    if fer_winner <= 0:
        raise ValueError("winner TUB(FER) is zero; ratio undefined")
    return fer_baseline / fer_winner


def compare_to_baseline(record: SearchRecord, baseline_spectrum: DistanceSpectrum) -> float:
    """Ratio of the baseline polynomial's TUB(FER) to the winner's."""
    fer_base = tub_fer(baseline_spectrum, record.L, record.snr_db)
    return compare_to_baseline_value(fer_base, record.tub_fer)
