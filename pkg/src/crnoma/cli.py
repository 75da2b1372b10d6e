"""Command-line interface: scenario sweeps, optimization tables, and
Monte-Carlo validation reports.

Exit codes: 0 success, 1 usage or config error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .config import DEFAULT_SEED, DEFAULT_VALIDATION_TRIALS, load_config
from .errors import ConfigError, DomainError
from .optimize import optimize_all
from .sensing import (
    num_samples,
    pf_from_threshold,
    simulate_detection,
    threshold_from_pd,
)
from .statmath import Probability
from .throughput import (
    ScenarioConfig,
    interference_prob_imperfect,
    interference_prob_perfect,
    r0 as _r0,
    r1 as _r1,
    _sum_rates,
)
from .sensing import pf_from_pd

__all__ = [
    "CSV_HEADER",
    "SweepRow",
    "load_config",
    "run_sweep",
    "run_optimize",
    "run_validate",
    "main",
]

#: Exact sweep CSV header; columns are emitted with 17 significant digits.
CSV_HEADER = "tau,p_f,p_d,p_p,p_ip,k_n,k_ns,r0,r0p,r1,r1pip,r_th,r_thp"

#: The validation grid spans this fraction of the frame on each side.
_VALIDATE_SPAN = (0.1, 0.9)
_VALIDATE_POINTS = 5


@dataclass(frozen=True)
class SweepRow:
    """One sweep sample; the composite columns satisfy r_th = r0 + r1 and
    r_thp = r0p + r1pip exactly because they are formed from the same
    floats that fill the component columns."""

    tau: float
    p_f: float
    p_d: float
    p_p: float
    p_ip: float
    k_n: float
    k_ns: float
    r0: float
    r0p: float
    r1: float
    r1pip: float
    r_th: float
    r_thp: float


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def sweep_rows(scenario: ScenarioConfig, steps: int) -> list:
    """Compute the sweep as SweepRow records (vectorized, deterministic)."""
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}")
    s = scenario.sensing
    T = s.frame_duration
    eps = T * 1e-6
    taus = np.linspace(eps, T - eps, steps)
    p_f = pf_from_pd(s.target_pd, s.pu_snr, taus, s.sample_rate)
    p_d = float(s.target_pd)
    p_p = interference_prob_perfect(taus, T, scenario.traffic.beta)
    p_ip = interference_prob_imperfect(taus, T, scenario.traffic.alpha)
    k_n, k_ns = _sum_rates(scenario, taus)
    r0 = _r0(taus, scenario)
    r1 = _r1(taus, scenario)
    r0p = r0 * (1.0 - p_p)
    r1pip = r1 * (1.0 - p_ip)
    r_th = r0 + r1
    r_thp = r0p + r1pip
    return [
        SweepRow(
            tau=float(taus[i]),
            p_f=float(p_f[i]),
            p_d=p_d,
            p_p=float(p_p[i]),
            p_ip=float(p_ip[i]),
            k_n=float(k_n[i]),
            k_ns=float(k_ns[i]),
            r0=float(r0[i]),
            r0p=float(r0p[i]),
            r1=float(r1[i]),
            r1pip=float(r1pip[i]),
            r_th=float(r_th[i]),
            r_thp=float(r_thp[i]),
        )
        for i in range(steps)
    ]


def run_sweep(scenario: ScenarioConfig, steps: int, out) -> list:
    """Write a sweep CSV (LF line endings, '.' decimals) and return its rows."""
    rows = sweep_rows(scenario, steps)
    path = Path(out)
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    r.tau, r.p_f, r.p_d, r.p_p, r.p_ip, r.k_n, r.k_ns,
                    r.r0, r.r0p, r.r1, r.r1pip, r.r_th, r.r_thp,
                )
            )
        )
    try:
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise ConfigError(f"cannot write sweep output {path}: {exc}") from None
    return rows


def run_optimize(scenario: ScenarioConfig) -> str:
    """Format the four-objective optimization table."""
    rows = optimize_all(scenario)
    out = ["objective                     tau_opt          value_opt        method          dtau_vs_grid  rel_gap"]
    for row in rows:
        g = row.golden
        line = (
            f"{row.kind.value:<28s}  {g.tau_opt:<15.10g}  {g.value_opt:<15.10g}  "
            f"{g.method.value:<14s}  {row.delta_tau:<12.3g}  {row.relative_gap:.3g}"
        )
        if row.warning:
            line += "  [warning: non-unimodal?]"
        out.append(line)
    return "\n".join(out)


def run_validate(scenario: ScenarioConfig, trials: int, seed: int):
    """Compare detector analytics against Monte-Carlo at five sensing times.

    Returns (report_text, all_pass). Each cell reports the analytic value,
    the empirical value, the 4-sigma binomial band around the analytic
    value, and PASS/FAIL.
    """
    if trials < 100:
        raise DomainError(f"trials must be >= 100, got {trials}")
    s = scenario.sensing
    T = s.frame_duration
    taus = np.linspace(_VALIDATE_SPAN[0] * T, _VALIDATE_SPAN[1] * T, _VALIDATE_POINTS)
    lines = [
        f"detector validation: trials={trials} seed={seed}",
        "tau          M      pf_analytic  pf_empirical pf_band_4s   pf      "
        "pd_analytic  pd_empirical pd_band_4s   pd",
    ]
    all_pass = True
    for tau in taus:
        tau = float(tau)
        threshold = threshold_from_pd(s, tau)
        pf_ana = float(pf_from_threshold(threshold, s, tau))
        pd_ana = float(s.target_pd)
        outcome = simulate_detection(s, tau, threshold, trials, seed)
        band_f = 4.0 * math.sqrt(pf_ana * (1.0 - pf_ana) / trials)
        band_d = 4.0 * math.sqrt(pd_ana * (1.0 - pd_ana) / trials)
        ok_f = abs(float(outcome.empirical_pf) - pf_ana) <= band_f
        ok_d = abs(float(outcome.empirical_pd) - pd_ana) <= band_d
        all_pass = all_pass and ok_f and ok_d
        lines.append(
            f"{tau:<12.6f} {outcome.samples_per_trial:<6d} "
            f"{pf_ana:<12.6f} {float(outcome.empirical_pf):<12.6f} "
            f"{band_f:<12.6f} {'PASS' if ok_f else 'FAIL':<7s} "
            f"{pd_ana:<12.6f} {float(outcome.empirical_pd):<12.6f} "
            f"{band_d:<12.6f} {'PASS' if ok_d else 'FAIL'}"
        )
    lines.append("result: " + ("ALL PASS" if all_pass else "FAILED"))
    return "\n".join(lines), all_pass


class _Parser(argparse.ArgumentParser):
    """argparse maps usage errors to exit 2; this contract reserves 2 for
    validation failures, so usage errors raise and main returns 1."""

    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crnoma", description=__doc__)
    parser.add_argument("--version", action="version", version=f"crnoma {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="write a sensing-time sweep as CSV")
    p_sweep.add_argument("--config", required=True, help="scenario config file")
    p_sweep.add_argument("--steps", type=int, default=101, help="number of rows")
    p_sweep.add_argument("--out", required=True, help="output CSV path")

    p_opt = sub.add_parser("optimize", help="print optimal sensing times")
    p_opt.add_argument("--config", required=True, help="scenario config file")

    p_val = sub.add_parser("validate", help="Monte-Carlo detector validation")
    p_val.add_argument("--config", required=True, help="scenario config file")
    p_val.add_argument("--trials", type=int, default=DEFAULT_VALIDATION_TRIALS)
    p_val.add_argument("--seed", type=int, default=DEFAULT_SEED)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        scenario = load_config(args.config)
        if args.command == "sweep":
            run_sweep(scenario, args.steps, args.out)
            return 0
        if args.command == "optimize":
            print(run_optimize(scenario))
            return 0
        if args.command == "validate":
            report, all_pass = run_validate(scenario, args.trials, args.seed)
            print(report)
            return 0 if all_pass else 2
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
