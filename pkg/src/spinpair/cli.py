"""Command-line interface.

Subcommands: sweep-r, sweep-mu, heatmap, point, oracle.  Options may come
from ``--config FILE`` (lines of ``key = value``, ``#`` comments, keys named
after the long flags); explicit flags override the file.  Exit codes:
0 success, 2 configuration error, 3 numerical validation failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .backend import backend_name
from .correlators import correlator_set
from .errors import (
    DensityMatrixDefect,
    IntractableSize,
    MidShellError,
    SiteOutOfRange,
    SpinPairError,
    TooFewElectrons,
    VanishingTrace,
)
from .fermisea import band_onset_mu, occupy_by_count, occupy_by_filling, occupy_by_mu
from .measures import LN2, measure_set, x_state_check
from .model import ModelParams
from .oracle import from_fermi_sea, from_real_space, oracle_tsdm
from .rdm import ssdm, tsdm_closed_form, tsdm_wick, validate
from .sweeps import heatmap, sweep_distance, sweep_mu, write_csv

ORACLE_TOL = 1e-9


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _grid(text: str) -> list[float]:
    """'start:stop:count' linspace, or a comma-separated list."""
    if ":" in text:
        start, stop, count = text.split(":")
        return list(np.linspace(float(start), float(stop), int(count)))
    return _float_list(text)


def load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            values[key.strip().lower().replace("-", "_")] = value.strip()
    return values


_COMMON = {
    "t": ("t", float, 1.0),
    "B": ("b", float, 0.0),
    "lam": ("lambda", float, 0.0),
    "M": ("m", int, 500),
    "a": ("a", float, 1.0),
    "threads": ("threads", int, 1),
    "units": ("units", str, "nats"),
    "out": ("out", str, None),
}


def _add_common(sub):
    sub.add_argument("--t", type=float, help="hopping amplitude (default 1)")
    sub.add_argument("--B", type=float, help="Zeeman field strength (default 0)")
    sub.add_argument("--lambda", dest="lam", type=float, help="Rashba strength (default 0)")
    sub.add_argument("--M", type=int, help="number of lattice sites (default 500)")
    sub.add_argument("--a", type=float, help="lattice spacing (default 1)")
    sub.add_argument("--threads", type=int, help="worker threads for grid evaluation")
    sub.add_argument("--units", choices=("nats", "ln2"), help="entropy display units")
    sub.add_argument("--out", help="output file path")
    sub.add_argument("--config", help="key = value option file; flags override it")


def _merge(args, extra: dict) -> None:
    spec = dict(_COMMON)
    spec.update(extra)
    config = load_config(args.config) if args.config else {}
    for dest, (key, parse, default) in spec.items():
        if getattr(args, dest, None) is not None:
            continue
        if key in config:
            setattr(args, dest, parse(config[key]))
        else:
            setattr(args, dest, default)


def _params(args) -> ModelParams:
    return ModelParams(t=args.t, B=args.B, lam=args.lam, M=args.M, a=args.a)


def _emit(result, args) -> int:
    if not args.out:
        raise ValueError("--out is required for sweep output")
    write_csv(args.out, result)
    print(f"wrote {len(result.rows)} rows to {args.out}")
    if result.errors:
        print(f"{len(result.errors)} grid points reported in {args.out}.errors")
    return 0


def _cmd_sweep_r(args) -> int:
    _merge(
        args,
        {
            "delta": ("delta", _float_list, [0.1, 0.2, 0.3, 0.4, 0.5, 0.6]),
            "r_max": ("r_max", int, None),
        },
    )
    params = _params(args)
    r_max = args.r_max if args.r_max is not None else params.M // 2
    result = sweep_distance(
        params, args.delta, r_max, snap=not args.strict_filling, threads=args.threads
    )
    return _emit(result, args)


def _cmd_sweep_mu(args) -> int:
    _merge(
        args,
        {
            "r_fixed": ("r_fixed", int, 0),
            "mu_min": ("mu_min", float, None),
            "mu_max": ("mu_max", float, None),
        },
    )
    params = _params(args)
    result = sweep_mu(
        params,
        r_fixed=args.r_fixed,
        mu_min=args.mu_min,
        mu_max=args.mu_max,
        threads=args.threads,
    )
    return _emit(result, args)


def _cmd_heatmap(args) -> int:
    _merge(
        args,
        {
            "b_grid": ("b_grid", _grid, _grid("0:2:21")),
            "lambda_grid": ("lambda_grid", _grid, _grid("0:2:21")),
            "r_fixed": ("r_fixed", _int_list, [0, 2, 10]),
            "delta": ("delta", float, 0.3),
        },
    )
    params = _params(args)
    result = heatmap(
        params,
        args.b_grid,
        args.lambda_grid,
        args.r_fixed,
        args.delta,
        snap=not args.strict_filling,
        threads=args.threads,
    )
    return _emit(result, args)


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _fmt_matrix(mat: np.ndarray) -> str:
    return np.array2string(
        np.round(mat, 14), precision=12, suppress_small=True, max_line_width=120
    )


def _cmd_point(args) -> int:
    _merge(
        args,
        {
            "delta": ("delta", float, None),
            "mu": ("mu", float, None),
            "n_electrons": ("n_electrons", int, None),
            "r1": ("r1", int, 0),
            "r2": ("r2", int, 0),
        },
    )
    params = _params(args)
    chosen = [x for x in (args.delta, args.mu, args.n_electrons) if x is not None]
    if len(chosen) != 1:
        raise ValueError("give exactly one of --delta, --mu, --n-electrons")
    if args.delta is not None:
        occ = occupy_by_filling(params, args.delta)
    elif args.mu is not None:
        occ = occupy_by_mu(params, args.mu)
    else:
        occ = occupy_by_count(params, args.n_electrons)

    pair = tsdm_wick(occ, args.r1, args.r2)
    report = validate(pair)
    corr = correlator_set(occ, args.r1 - args.r2)
    closed = tsdm_closed_form(corr)
    path_dev = float(np.max(np.abs(pair.entries - closed.entries)))
    single = ssdm(pair, "spin1")
    ms = measure_set(pair)
    is_x, x_defect = x_state_check(pair)

    unit = args.units
    scale = 1.0 if unit == "nats" else 1.0 / LN2

    lines = [
        f"spinpair {__version__} point report (backend: {backend_name()})",
        f"params: t={params.t} B={params.B} lambda={params.lam} M={params.M} a={params.a}",
        f"filling: N_e={occ.n_electrons} delta={occ.delta:.12g} "
        f"lower={occ.count_lower} upper={occ.count_upper}",
        f"chemical potential: highest_occupied={occ.mu_highest_occupied:.12g} "
        f"midgap={occ.mu_midgap:.12g} band_onset={band_onset_mu(params):.12g}",
        f"sites: r1={args.r1} r2={args.r2} (R={args.r1 - args.r2})",
        f"correlators: m={corr.m} A={_fmt_complex(corr.A)} G={_fmt_complex(corr.G)} "
        f"H={_fmt_complex(corr.H)} K={_fmt_complex(corr.K)}",
        f"raw trace: {pair.norm_raw:.12g}",
        "two-site matrix (sigma_z product basis |uu>,|ud>,|du>,|dd>):",
        _fmt_matrix(pair.entries),
        f"closed-form cross-check: max deviation {path_dev:.3e}",
        f"validation: hermiticity={report.hermiticity_defect:.3e} "
        f"trace={report.trace_defect:.3e} min_eig={report.min_eigenvalue:.3e}",
        "single-spin matrix (spin1):",
        _fmt_matrix(single.entries),
        f"entropies ({unit}): S_ab={ms.s_pair * scale:.12g} S_a={ms.s_single * scale:.12g} "
        f"MI={ms.mutual_information * scale:.12g}",
        f"fidelities: F_s={ms.f_singlet:.12g} F_t1={ms.f_t1:.12g} "
        f"F_t2={ms.f_t2:.12g} F_t3={ms.f_t3:.12g}",
        f"x-state form: {is_x} (off-pattern max {x_defect:.3e})",
    ]
    text = "\n".join(lines)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0


def _cmd_oracle(args) -> int:
    _merge(
        args,
        {
            "n_electrons": ("n_electrons", int, 2),
            "r1": ("r1", int, 0),
            "r2": ("r2", int, 1),
            "mode": ("mode", str, "both"),
        },
    )
    params = _params(args)
    occ = occupy_by_count(params, args.n_electrons)
    pair = tsdm_wick(occ, args.r1, args.r2)
    reference = oracle_tsdm(from_fermi_sea(occ), args.r1, args.r2)
    dev = float(np.max(np.abs(pair.entries - reference.entries)))
    print(f"brute force vs production: max deviation {dev:.3e}")
    worst = dev
    if args.mode in ("both", "real-space"):
        alt = oracle_tsdm(from_real_space(params, args.n_electrons), args.r1, args.r2)
        dev_rs = float(np.max(np.abs(alt.entries - reference.entries)))
        print(f"real-space orbitals vs Bloch orbitals: max deviation {dev_rs:.3e}")
        worst = max(worst, dev_rs)
    if worst > ORACLE_TOL:
        print(f"deviation exceeds {ORACLE_TOL:.1e}", file=sys.stderr)
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinpair",
        description="Two-site spin density matrices of a 1D Fermi sea "
        "with Zeeman and Rashba couplings",
    )
    parser.add_argument("--version", action="version", version=f"spinpair {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sweep_r = subs.add_parser("sweep-r", help="diagnostics versus site separation")
    _add_common(sweep_r)
    sweep_r.add_argument("--delta", type=_float_list, help="comma-separated fillings")
    sweep_r.add_argument("--r-max", type=int, help="largest separation (default M/2)")
    sweep_r.add_argument(
        "--strict-filling",
        action="store_true",
        help="report mid-shell fillings as errors instead of snapping",
    )
    sweep_r.set_defaults(func=_cmd_sweep_r)

    mu = subs.add_parser("sweep-mu", help="diagnostics versus chemical potential")
    _add_common(mu)
    mu.add_argument("--r-fixed", type=int, help="site separation (default 0)")
    mu.add_argument("--mu-min", type=float, help="lowest midgap mu to emit")
    mu.add_argument("--mu-max", type=float, help="highest midgap mu to emit")
    mu.set_defaults(func=_cmd_sweep_mu)

    heat = subs.add_parser("heatmap", help="single-spin entropy over a (B, lambda) grid")
    _add_common(heat)
    heat.add_argument("--b-grid", type=_grid, help="start:stop:count or comma list")
    heat.add_argument("--lambda-grid", type=_grid, help="start:stop:count or comma list")
    heat.add_argument("--r-fixed", type=_int_list, help="comma-separated separations")
    heat.add_argument("--delta", type=float, help="target filling (default 0.3)")
    heat.add_argument(
        "--strict-filling",
        action="store_true",
        help="report mid-shell fillings as errors instead of snapping",
    )
    heat.set_defaults(func=_cmd_heatmap)

    point = subs.add_parser("point", help="full diagnostic report for one configuration")
    _add_common(point)
    point.add_argument("--delta", type=float, help="filling (strict: must close a shell)")
    point.add_argument("--mu", type=float, help="chemical potential")
    point.add_argument("--n-electrons", type=int, help="electron count")
    point.add_argument("--r1", type=int, help="first site (default 0)")
    point.add_argument("--r2", type=int, help="second site (default 0)")
    point.set_defaults(func=_cmd_point)

    oracle = subs.add_parser("oracle", help="brute-force cross-check at small sizes")
    _add_common(oracle)
    oracle.add_argument("--n-electrons", type=int, help="electron count (default 2)")
    oracle.add_argument("--r1", type=int, help="first site (default 0)")
    oracle.add_argument("--r2", type=int, help="second site (default 1)")
    oracle.add_argument(
        "--mode",
        choices=("bloch", "real-space", "both"),
        help="which orbital routes to compare (default both)",
    )
    oracle.set_defaults(func=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (VanishingTrace, DensityMatrixDefect) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        MidShellError,
        TooFewElectrons,
        SiteOutOfRange,
        IntractableSize,
        SpinPairError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
