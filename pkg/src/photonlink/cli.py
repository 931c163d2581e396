"""Command line interface.

Four subcommands:

* ``table1``     reproduce the reference-regime link budgets and rates
* ``pie-sweep``  optimized photon information efficiency over an (n_a, n_b) grid
* ``link``       optimized data rate and peak power versus link distance
* ``receiver``   structured-receiver demo: codebook pattern, output field,
                 click probabilities, concentration efficiency

Output is CSV with a '#'-prefixed metadata header that echoes the command
and every parameter; given the same arguments the data section is
byte-identical between runs.  Exit codes: 0 success, 1 a computational flag
was raised (optimizer hit the search bound), 2 usage or config errors.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .capacity import PhotonNumbers, holevo_capacity, shannon_capacity
from .linkbudget import (
    DEFAULT_CONSTANTS,
    LinkConfigError,
    REFERENCE_REGIMES,
    load_link_params,
    noise_power_watts,
    rate_vs_distance,
    regime_summary,
)
from .noise import GAUSS, POISSON, NoiseModel, click_probs
from .optimize import FLAG_OK, OOK, PPM, sweep_pie
from .receiver import (
    H,
    PatternFormatError,
    ReceiverConfig,
    V,
    apply_receiver,
    concentration_efficiency,
    make_pattern,
    save_pattern,
)

MAX_RECEIVER_K = 16

SEPARATION_NOTE = (
    "note: consecutive codebook patterns must be separated by at least one "
    "pattern length at the transmitter; this demo simulates a single pattern"
)


def _fmt(value: object) -> str:
    if isinstance(value, float):  # includes numpy scalars, hence the cast
        return repr(float(value))
    return str(value)


def _write_table(
    out_path: str | None,
    command: str,
    params: dict[str, object],
    columns: Sequence[str],
    rows: Sequence[Sequence[object]],
) -> None:
    lines = [f"# photonlink {__version__} {command}"]
    for key, value in params.items():
        lines.append(f"# {key} = {value}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text, encoding="utf-8")


def _bundled_config(name: str) -> str:
    return str(resources.files("photonlink").joinpath(f"configs/{name}"))


def _log_grid(start: float, stop: float, points: float) -> np.ndarray:
    count = int(points)
    if start <= 0.0 or stop < start or count < 1 or count != points:
        raise ValueError(f"bad grid: start {start!r}, stop {stop!r}, points {points!r}")
    return np.geomspace(start, stop, count)


def _model_kinds(choice: str) -> list[str]:
    return [POISSON, GAUSS] if choice == "both" else [choice]


def _scheme_list(choice: str) -> list[str]:
    return [PPM, OOK] if choice == "both" else [choice]


def cmd_table1(args: argparse.Namespace) -> int:
    columns = ["quantity", "regime", "computed", "reference", "rel_error"]
    rows = []
    for regime, config_path in (("rf", args.rf_config), ("optical", args.optical_config)):
        ref = REFERENCE_REGIMES[regime]
        lp = load_link_params(config_path)
        summary = regime_summary(lp, ref.n_b)
        for quantity, reference in (
            ("eta_ch", ref.eta_ch),
            ("n_a", ref.n_a),
            ("shannon_rate_bps", ref.shannon_rate_bps),
            ("holevo_rate_bps", ref.holevo_rate_bps),
        ):
            computed = summary[quantity]
            rows.append(
                [quantity, regime, computed, reference, abs(computed - reference) / reference]
            )
    params = {
        "rf_config": args.rf_config,
        "optical_config": args.optical_config,
        "n_b_rf": REFERENCE_REGIMES["rf"].n_b,
        "n_b_optical": REFERENCE_REGIMES["optical"].n_b,
    }
    _write_table(args.out, "table1", params, columns, rows)
    return 0


def cmd_pie_sweep(args: argparse.Namespace) -> int:
    n_a_grid = _log_grid(*args.na_grid)
    schemes = _scheme_list(args.scheme)
    kinds = _model_kinds(args.model)
    exit_code = 0
    for scheme in schemes:
        columns = ["n_a", "n_b", "model", "m_star", "pie", "pulse_energy", "flag"]
        rows = []
        for kind in kinds:
            for row in sweep_pie(n_a_grid, args.n_b, kind, scheme):
                if row.flag != FLAG_OK:
                    exit_code = 1
                rows.append(
                    [row.n_a, row.n_b, kind, row.m_star, row.pie_star, row.pulse_energy, row.flag]
                )
        params = {
            "scheme": scheme,
            "model": args.model,
            "n_b": " ".join(repr(v) for v in args.n_b),
            "na_grid": " ".join(repr(v) for v in args.na_grid),
        }
        out = args.out
        if out is not None and len(schemes) > 1:
            path = Path(out)
            out = str(path.with_name(f"{path.stem}_{scheme}{path.suffix}"))
        _write_table(out, "pie-sweep", params, columns, rows)
    return exit_code


def cmd_link(args: argparse.Namespace) -> int:
    lp = load_link_params(args.config)
    r_grid_au = _log_grid(*args.r_au_grid)
    r_grid_m = r_grid_au * DEFAULT_CONSTANTS.au_m
    schemes = args.schemes
    kinds = _model_kinds(args.model)

    columns = ["model", "r_au", "n_a"]
    for scheme in schemes:
        columns += [f"rate_{scheme}_bps", f"peak_power_{scheme}_w", f"flag_{scheme}"]
    columns += ["rate_shannon_bps", "rate_holevo_bps"]

    exit_code = 0
    rows = []
    for kind in kinds:
        noise = NoiseModel(kind, args.n_b)
        by_scheme = {
            scheme: rate_vs_distance(lp, noise, scheme, r_grid_m) for scheme in schemes
        }
        for i, r_au in enumerate(r_grid_au):
            first = by_scheme[schemes[0]][i]
            row = [kind, float(r_au), first.n_a]
            for scheme in schemes:
                sr = by_scheme[scheme][i]
                if sr.flag != FLAG_OK:
                    exit_code = 1
                row += [sr.rate_bps, sr.peak_power_w, sr.flag]
            row += [first.shannon_rate_bps, first.holevo_rate_bps]
            rows.append(row)

    params = {
        "config": args.config,
        "n_b": args.n_b,
        "model": args.model,
        "schemes": " ".join(schemes),
        "r_au_grid": " ".join(repr(v) for v in args.r_au_grid),
        "noise_power_w": noise_power_watts(args.n_b, lp.f_c_hz, lp.bandwidth_hz),
    }
    _write_table(args.out, "link", params, columns, rows)
    return exit_code


def cmd_receiver(args: argparse.Namespace) -> int:
    if args.k > MAX_RECEIVER_K:
        raise ValueError(f"k = {args.k} refused, the demo supports k <= {MAX_RECEIVER_K}")
    cfg = ReceiverConfig(
        k=args.k,
        per_module_loss=args.loss,
        phase_error_sigma=args.phase_sigma,
        rng_seed=args.seed,
    )
    pattern = make_pattern(args.k, args.target_bin, args.energy)
    out_field = apply_receiver(pattern, cfg)
    mean, std = concentration_efficiency(
        cfg, args.trials, target_bin=args.target_bin, total_energy=args.energy
    )

    kinds = _model_kinds(args.model)
    click_columns = {
        kind: [
            click_probs(NoiseModel(kind, args.n_b), e).p_p
            for e in out_field.bin_energies()
        ]
        for kind in kinds
    }

    columns = (
        ["bin", "in_re_h", "in_im_h", "in_re_v", "in_im_v"]
        + ["out_re_h", "out_im_h", "out_re_v", "out_im_v", "out_bin_energy"]
        + [f"click_prob_{kind}" for kind in kinds]
    )
    rows = []
    out_energies = out_field.bin_energies()
    for i in range(pattern.n_bins):
        row = [
            i,
            pattern.amps[i, H].real,
            pattern.amps[i, H].imag,
            pattern.amps[i, V].real,
            pattern.amps[i, V].imag,
            out_field.amps[i, H].real,
            out_field.amps[i, H].imag,
            out_field.amps[i, V].real,
            out_field.amps[i, V].imag,
            float(out_energies[i]),
        ]
        row += [click_columns[kind][i] for kind in kinds]
        rows.append(row)

    params = {
        "k": args.k,
        "target_bin": args.target_bin,
        "energy": args.energy,
        "loss": args.loss,
        "phase_sigma": args.phase_sigma,
        "seed": args.seed,
        "trials": args.trials,
        "n_b": args.n_b,
        "model": args.model,
        "concentration_mean": repr(mean),
        "concentration_std": repr(std),
    }
    if args.pattern_out is not None:
        save_pattern(args.pattern_out, pattern)
        params["pattern_out"] = args.pattern_out
    print(SEPARATION_NOTE, file=sys.stderr)
    _write_table(args.out, "receiver", params, columns, rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonlink",
        description="Efficiency limits and receiver modelling for photon-starved optical links.",
    )
    parser.add_argument("--version", action="version", version=f"photonlink {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_table1 = sub.add_parser("table1", help="reproduce the reference link budgets")
    p_table1.add_argument("--rf-config", default=_bundled_config("table1_rf.cfg"))
    p_table1.add_argument("--optical-config", default=_bundled_config("table1_optical.cfg"))
    p_table1.add_argument("--out", default=None)
    p_table1.set_defaults(func=cmd_table1)

    p_sweep = sub.add_parser("pie-sweep", help="optimized efficiency over an (n_a, n_b) grid")
    p_sweep.add_argument("--scheme", choices=[PPM, OOK, "both"], default="both")
    p_sweep.add_argument("--model", choices=[POISSON, GAUSS, "both"], default="both")
    p_sweep.add_argument("--n-b", type=float, nargs="+", default=[1e-1, 1e-2, 1e-3, 1e-4])
    p_sweep.add_argument(
        "--na-grid",
        type=float,
        nargs=3,
        metavar=("START", "STOP", "POINTS"),
        default=[1e-6, 1e-1, 26],
        help="log-spaced n_a grid",
    )
    p_sweep.add_argument("--out", default=None, help="with --scheme both, one file per scheme")
    p_sweep.set_defaults(func=cmd_pie_sweep)

    p_link = sub.add_parser("link", help="rate and peak power versus distance")
    p_link.add_argument("--config", default=_bundled_config("table1_optical.cfg"))
    p_link.add_argument("--n-b", type=float, default=1e-2)
    p_link.add_argument("--model", choices=[POISSON, GAUSS, "both"], default=POISSON)
    p_link.add_argument("--schemes", choices=[PPM, OOK], nargs="+", default=[PPM, OOK])
    p_link.add_argument(
        "--r-au-grid",
        type=float,
        nargs=3,
        metavar=("START", "STOP", "POINTS"),
        default=[1e-1, 1e3, 29],
        help="log-spaced distance grid in astronomical units",
    )
    p_link.add_argument("--out", default=None)
    p_link.set_defaults(func=cmd_link)

    p_rx = sub.add_parser("receiver", help="structured-receiver demo")
    p_rx.add_argument("--k", type=int, default=3, help=f"number of modules, <= {MAX_RECEIVER_K}")
    p_rx.add_argument("--target-bin", type=int, default=0)
    p_rx.add_argument("--energy", type=float, default=1.0)
    p_rx.add_argument("--loss", type=float, default=1.0, help="per-module power transmission")
    p_rx.add_argument("--phase-sigma", type=float, default=0.0, help="phase error spread, rad")
    p_rx.add_argument("--trials", type=int, default=1000)
    p_rx.add_argument("--n-b", type=float, default=0.0)
    p_rx.add_argument("--model", choices=[POISSON, GAUSS, "both"], default=POISSON)
    p_rx.add_argument("--seed", type=int, default=0)
    p_rx.add_argument("--out", default=None)
    p_rx.add_argument("--pattern-out", default=None, help="write the codebook pattern file")
    p_rx.set_defaults(func=cmd_receiver)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LinkConfigError, PatternFormatError, ValueError, OSError) as exc:
        print(f"photonlink {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
