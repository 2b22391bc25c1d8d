"""Grid sweeps over separation, filling, and field strengths, emitted as CSV.

Every emitted row passed validation first; grid points whose two-site matrix
is undefined (for example coincident sites in a fully polarized sea) are
recorded in a sidecar ``<out>.errors`` file instead of the table.  Requested
fillings that would split a degenerate shell are snapped to the nearest
shell-closing electron count by default (reported in the header and kept in
a ``delta_requested`` column); strict mode routes them to the sidecar
instead.  Row values depend only on the configuration, never on the thread
count, so identical configurations produce byte-identical files.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import MidShellError, TooFewElectrons, VanishingTrace
from .fermisea import (
    OccupiedSet,
    band_onset_mu,
    nearest_valid_count,
    occupy_by_count,
    valid_electron_counts,
)
from .measures import LN2, MeasureSet, measure_set
from .model import ModelParams
from .rdm import tsdm_wick, validate

DISTANCE_HEADER = (
    "delta,R,S_ab_nats,S_ab_ln2,S_a_nats,S_a_ln2,MI_nats,"
    "F_s,F_t1,F_t2,F_t3,n_electrons,delta_requested"
).split(",")
MU_HEADER = (
    "mu_midgap,delta,F_s,F_t1,F_t2,F_t3,S_ab_nats,S_a_nats,n_electrons"
).split(",")
HEATMAP_HEADER = "B,lambda,R,delta,S_a_nats,S_a_ln2,n_electrons".split(",")


@dataclass
class SweepResult:
    metadata: list[str]
    header: list[str]
    rows: list[tuple]
    errors: list[tuple[str, str, str]]


def point_measures(occ: OccupiedSet, r1: int, r2: int) -> MeasureSet:
    """Validated diagnostics for one site pair of one Fermi sea."""
    pair = tsdm_wick(occ, r1, r2)
    validate(pair)
    return measure_set(pair)


def _params_lines(params: ModelParams) -> list[str]:
    return [
        f"# spinpair {__version__}",
        f"# t={params.t:.17g} B={params.B:.17g} lambda={params.lam:.17g} "
        f"M={params.M} a={params.a:.17g}",
    ]


def _resolve_fillings(params, deltas, snap):
    """Map requested fillings to shell-closing occupations.

    Returns (resolved, notes, errors); resolved entries are
    (delta_requested, OccupiedSet).
    """
    resolved, notes, errors = [], [], []
    for delta in deltas:
        requested = round(delta * params.M)
        try:
            occ = occupy_by_count(params, requested)
        except MidShellError as exc:
            if not snap:
                errors.append((f"delta={delta:.17g}", type(exc).__name__, str(exc)))
                continue
            count = nearest_valid_count(params, requested)
            occ = occupy_by_count(params, count)
            notes.append(
                f"# note: delta={delta:.17g} snapped to N_e={count} "
                f"(delta={occ.delta:.17g}); {exc}"
            )
        resolved.append((delta, occ))
    return resolved, notes, errors


def _run_tasks(tasks, threads):
    if threads <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda task: task(), tasks))


def sweep_distance(
    params: ModelParams,
    deltas,
    r_max: int,
    snap: bool = True,
    threads: int = 1,
) -> SweepResult:
    """Diagnostics versus site separation R = 0..r_max for each filling."""
    if not 0 <= r_max <= params.M // 2:
        raise ValueError(f"r_max must lie in [0, M/2] = [0, {params.M // 2}]")
    resolved, notes, errors = _resolve_fillings(params, deltas, snap)
    resolved.sort(key=lambda item: item[1].delta)

    def make_task(delta_req, occ, r):
        def task():
            try:
                ms = point_measures(occ, r, 0)
            except (VanishingTrace, TooFewElectrons) as exc:
                return (
                    f"delta={occ.delta:.17g},R={r}",
                    type(exc).__name__,
                    str(exc),
                )
            return (
                occ.delta,
                r,
                ms.s_pair,
                ms.s_pair / LN2,
                ms.s_single,
                ms.s_single / LN2,
                ms.mutual_information,
                ms.f_singlet,
                ms.f_t1,
                ms.f_t2,
                ms.f_t3,
                occ.n_electrons,
                delta_req,
            )

        return task

    tasks = [
        make_task(delta_req, occ, r)
        for delta_req, occ in resolved
        for r in range(r_max + 1)
    ]
    rows = []
    for outcome in _run_tasks(tasks, threads):
        if len(outcome) == 3 and isinstance(outcome[0], str):
            errors.append(outcome)
        else:
            rows.append(outcome)

    metadata = _params_lines(params) + [
        "# sweep: distance (r1=R, r2=0)",
        f"# deltas={','.join(f'{d:.17g}' for d in deltas)}",
        f"# r_max={r_max}",
        f"# filling={'snap' if snap else 'strict'}",
    ] + notes
    return SweepResult(metadata, list(DISTANCE_HEADER), rows, errors)


def sweep_mu(
    params: ModelParams,
    r_fixed: int = 0,
    mu_min: float | None = None,
    mu_max: float | None = None,
    threads: int = 1,
) -> SweepResult:
    """Diagnostics versus chemical potential: one row per shell-closing count.

    The emitted mu is the midpoint between the highest occupied and lowest
    empty level of each filling.
    """
    if not 0 <= r_fixed <= params.M // 2:
        raise ValueError(f"r_fixed must lie in [0, M/2] = [0, {params.M // 2}]")
    counts = [int(c) for c in valid_electron_counts(params) if c >= 2]

    def make_task(count):
        def task():
            occ = occupy_by_count(params, count)
            if mu_min is not None and occ.mu_midgap < mu_min:
                return None
            if mu_max is not None and occ.mu_midgap > mu_max:
                return None
            try:
                ms = point_measures(occ, r_fixed, 0)
            except (VanishingTrace, TooFewElectrons) as exc:
                return (
                    f"N_e={count},mu_midgap={occ.mu_midgap:.17g},R={r_fixed}",
                    type(exc).__name__,
                    str(exc),
                )
            return (
                occ.mu_midgap,
                occ.delta,
                ms.f_singlet,
                ms.f_t1,
                ms.f_t2,
                ms.f_t3,
                ms.s_pair,
                ms.s_single,
                count,
            )

        return task

    rows, errors = [], []
    for outcome in _run_tasks([make_task(c) for c in counts], threads):
        if outcome is None:
            continue
        if len(outcome) == 3 and isinstance(outcome[0], str):
            errors.append(outcome)
        else:
            rows.append(outcome)

    metadata = _params_lines(params) + [
        "# sweep: chemical potential (every shell-closing electron count)",
        f"# r_fixed={r_fixed}",
        f"# band_onset_mu={band_onset_mu(params):.17g}",
    ]
    return SweepResult(metadata, list(MU_HEADER), rows, errors)


def heatmap(
    params: ModelParams,
    b_values,
    lam_values,
    r_values,
    delta: float,
    snap: bool = True,
    threads: int = 1,
) -> SweepResult:
    """Single-spin entropy over a (B, lambda) grid at fixed separations."""
    for r in r_values:
        if not 0 <= r <= params.M // 2:
            raise ValueError(f"R={r} outside [0, M/2] = [0, {params.M // 2}]")

    def make_task(b, lam):
        def task():
            local = dataclasses.replace(params, B=b, lam=lam)
            rows, errs = [], []
            resolved, notes, errs0 = _resolve_fillings(local, [delta], snap)
            for ctx, name, msg in errs0:
                errs.append((f"B={b:.17g},lambda={lam:.17g},{ctx}", name, msg))
            if not resolved:
                return rows, errs
            _, occ = resolved[0]
            for r in r_values:
                try:
                    ms = point_measures(occ, r, 0)
                except (VanishingTrace, TooFewElectrons) as exc:
                    errs.append(
                        (
                            f"B={b:.17g},lambda={lam:.17g},R={r}",
                            type(exc).__name__,
                            str(exc),
                        )
                    )
                    continue
                rows.append(
                    (
                        b,
                        lam,
                        r,
                        occ.delta,
                        ms.s_single,
                        ms.s_single / LN2,
                        occ.n_electrons,
                    )
                )
            return rows, errs

        return task

    tasks = [make_task(b, lam) for b in b_values for lam in lam_values]
    rows, errors = [], []
    for point_rows, point_errs in _run_tasks(tasks, threads):
        rows.extend(point_rows)
        errors.extend(point_errs)

    metadata = _params_lines(params) + [
        "# sweep: heatmap over (B, lambda), row-major (B outer, lambda inner, R last)",
        f"# b_grid={','.join(f'{b:.17g}' for b in b_values)}",
        f"# lambda_grid={','.join(f'{v:.17g}' for v in lam_values)}",
        f"# r_values={','.join(str(r) for r in r_values)}",
        f"# delta_requested={delta:.17g}",
        f"# filling={'snap' if snap else 'strict'}",
    ]
    return SweepResult(metadata, list(HEATMAP_HEADER), rows, errors)


def _format_value(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(path: str, result: SweepResult) -> None:
    """Write the table (and, when any, the ``.errors`` sidecar) as UTF-8 CSV."""
    lines = list(result.metadata)
    lines.append(",".join(result.header))
    for row in result.rows:
        lines.append(",".join(_format_value(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    if result.errors:
        with open(f"{path}.errors", "w", encoding="utf-8", newline="\n") as fh:
            fh.write("context,error,detail\n")
            for context, name, message in result.errors:
                detail = message.replace('"', "'")
                fh.write(f'{context},{name},"{detail}"\n')
