"""Command-line surface: masses, Poisson checks, bound sweeps, verification, advice.

Exit codes: 0 success, 1 verification failure, 2 argument/parse errors,
3 enumeration budget or tolerance failures.  JSON output uses stable key
order; user-facing bound values are reported in log2 (advantage in bits)
while all internal arithmetic stays in natural logs.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
import warnings

import numpy as np

from .bounds import (
    LN2,
    classic_bound_log,
    epsilon_log,
    improved_bound_log,
    improved_sandwich_log,
    improvement_ratio_log,
    in_two_x_regime,
)
from .errors import (
    BudgetExceeded,
    DomainError,
    LatGaussError,
    NotFullRank,
    RankDeficient,
    TolUnreachable,
    VerificationFailure,
)
from .gauss import coset_mass, excluded_mass, poisson_check
from .lattice import DEFAULT_BUDGET, load_basis
from .verify import SuiteConfig, run_suite

SWEEP_HEADER = [
    "n",
    "c",
    "k",
    "log2_classic",
    "log2_epsilon",
    "log2_improved",
    "log2_improved_sandwich",
    "log2_ratio_gain",
    "log2_true_ratio",
]


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    """Validated parameters of one bounds sweep."""

    n_values: tuple
    c_start: float
    c_stop: float
    c_step: float
    k: float
    include_true_ratio: bool = False
    basis_path: str | None = None
    s: float = 1.0
    tol: float = 1e-9

    def __post_init__(self):
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise DomainError("n values must be positive integers")
        if self.c_start < 1.0:
            raise DomainError("c range must start at 1 or above")
        if self.c_step <= 0:
            raise DomainError("step must be positive")
        if self.k <= 0:
            raise DomainError(f"k must be positive, got {self.k}")
        if self.include_true_ratio and not self.basis_path:
            raise DomainError("--include-true-ratio requires --basis")
        if self.include_true_ratio and self.s <= 0:
            raise DomainError("s must be positive")

    @property
    def c_values(self) -> list:
        values = []
        i = 0
        while True:
            v = self.c_start + i * self.c_step
            if v > self.c_stop + self.c_step * 1e-9:
                break
            values.append(v)
            i += 1
        return values


@dataclasses.dataclass(frozen=True)
class AdviceResult:
    """Smallest c meeting a target distinguishing advantage via the 2x bound."""

    c_min: float
    achieved_log2_bound: float
    gain_log2: float
    regime_ok: bool


def advise(n: int, target_log2_advantage: float, k: float) -> AdviceResult:
    """Invert ln 2 + (n/2)(1 - c^2) <= target * ln 2 for the smallest c >= 1.

    Closed form: c_min = sqrt(1 + 2 ln2 (1 - target) / n), clamped to 1
    when the target is already met there (the bound at c = 1 is exactly 2,
    so every target >= 1 bit is met by c = 1).  gain_log2 is log2 of the
    c^n/2 improvement factor over the classic bound at c_min.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if k <= 0:
        raise DomainError(f"k must be positive, got {k}")
    c_sq = 1.0 + 2.0 * LN2 * (1.0 - target_log2_advantage) / n
    c_min = math.sqrt(c_sq) if c_sq > 1.0 else 1.0
    achieved = math.fsum([LN2, 0.5 * n, -0.5 * n * (c_min * c_min)]) / LN2
    gain = n * math.log2(c_min) - 1.0
    return AdviceResult(
        c_min=c_min,
        achieved_log2_bound=achieved,
        gain_log2=gain,
        regime_ok=in_two_x_regime(k, n),
    )


def _round_sig(value, digits: int):
    if isinstance(value, float) and math.isfinite(value) and value != 0.0:
        return float(f"{value:.{digits}g}")
    return value


def _emit_json(obj: dict, digits: int) -> str:
    def walk(v):
        if isinstance(v, dict):
            return {k: walk(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [walk(x) for x in v]
        return _round_sig(v, digits)

    return json.dumps(walk(obj))


def _parse_vector(text: str, dim: int) -> np.ndarray:
    if not text:
        return np.zeros(dim)
    parts = [p for p in text.replace(",", " ").split() if p]
    vec = np.array([float(p) for p in parts])
    if vec.shape != (dim,):
        raise DomainError(
            f"vector has dimension {vec.shape[0]}, but the basis lives in dimension {dim}"
        )
    return vec


def cmd_mass(args) -> int:
    basis = load_basis(args.basis)
    t = _parse_vector(args.t, basis.ambient_dim)
    if args.s <= 0:
        raise DomainError("s must be positive")
    result = coset_mass(basis, t, args.s, args.tol, args.budget)
    print(
        _emit_json(
            {
                "value": result.value,
                "tail_bound": result.tail_bound,
                "radius": result.radius,
                "points_used": result.points_used,
            },
            args.precision,
        )
    )
    return 0


def cmd_poisson(args) -> int:
    basis = load_basis(args.basis)
    t = _parse_vector(args.t, basis.ambient_dim)
    if args.s <= 0:
        raise DomainError("s must be positive")
    lhs, rhs, agreement = poisson_check(basis, t, args.s, args.tol, args.budget)
    print(
        _emit_json(
            {
                "lhs": {
                    "value": lhs.value,
                    "tail_bound": lhs.tail_bound,
                    "radius": lhs.radius,
                    "points_used": lhs.points_used,
                },
                "rhs": {
                    "real_part": rhs.real_part,
                    "imag_part": rhs.imag_part,
                    "tail_bound": rhs.tail_bound,
                },
                "agreement": agreement,
            },
            args.precision,
        )
    )
    return 0


def sweep_rows(spec: SweepSpec, budget: int = DEFAULT_BUDGET, digits: int = 15) -> list:
    """Evaluate one CSV row per (n, c); measured-ratio cells are NA off-lattice."""
    basis = None
    if spec.include_true_ratio:
        basis = load_basis(spec.basis_path)
        if basis.rank > 6:
            raise DomainError("true-ratio measurement is limited to lattices of dimension <= 6")

    def fmt(v: float) -> str:
        return f"{v:.{digits}g}"

    rows = []
    for n in spec.n_values:
        for c in spec.c_values:
            # Out-of-regime rows fall back with a RegimeViolation warning;
            # for a bulk sweep the flag would repeat per row, so silence it.
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                row = [
                    str(n),
                    fmt(c),
                    fmt(spec.k),
                    fmt(classic_bound_log(c, n) / LN2),
                    fmt(epsilon_log(spec.k, n) / LN2),
                    fmt(improved_bound_log(c, spec.k, n) / LN2),
                    fmt(improved_sandwich_log(c, spec.k, n) / LN2),
                    fmt(improvement_ratio_log(c, n) / LN2),
                ]
            if basis is not None and basis.rank == n:
                threshold = c * spec.s * math.sqrt(n / (2.0 * math.pi))
                num = excluded_mass(basis, np.zeros(n), spec.s, threshold, spec.tol, budget)
                den = coset_mass(basis, np.zeros(n), spec.s, spec.tol, budget)
                ratio = num.value / den.value
                row.append(fmt(math.log2(ratio)) if ratio > 0.0 else "-inf")
            else:
                row.append("NA")
            rows.append(row)
    return rows


def cmd_bounds_sweep(args) -> int:
    spec = SweepSpec(
        n_values=tuple(int(v) for v in args.n.split(",") if v),
        c_start=args.c_start,
        c_stop=args.c_stop,
        c_step=args.c_step,
        k=args.k,
        include_true_ratio=args.include_true_ratio,
        basis_path=args.basis,
        s=args.s,
        tol=args.tol,
    )
    rows = sweep_rows(spec, budget=args.budget, digits=args.precision)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        writer.writerows(rows)
    return 0


def cmd_verify(args) -> int:
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = SuiteConfig.from_dict(json.load(fh))
    else:
        config = SuiteConfig()
    if args.seed is not None:
        config = dataclasses.replace(config, seeds=(args.seed,))
    if args.budget != DEFAULT_BUDGET:
        config = dataclasses.replace(config, budget=args.budget)
    if args.negative_control:
        config = dataclasses.replace(config, corrupt_rhs=True)
    try:
        report = run_suite(config)
        code = 0
    except VerificationFailure as exc:
        report = exc.report
        code = 1
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(report.to_jsonl())
    print(_emit_json(report.summary, args.precision))
    return code


def cmd_advise(args) -> int:
    result = advise(args.n, args.target, args.k)
    print(
        _emit_json(
            {
                "c_min": result.c_min,
                "achieved_log2_bound": result.achieved_log2_bound,
                "gain_log2": result.gain_log2,
                "regime_ok": result.regime_ok,
            },
            args.precision,
        )
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latgauss",
        description="Lattice Gaussian masses, tail bounds, and inequality verification",
    )
    parser.add_argument("--precision", type=int, default=15,
                        help="significant digits in printed output (default 15)")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="enumeration point cap per call")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the verification suite's seed list with one seed")
    sub = parser.add_subparsers(dest="command", required=True)

    p_mass = sub.add_parser("mass", help="coset Gaussian mass with certified tail")
    p_mass.add_argument("--basis", required=True, help="basis file (JSON or matrix text)")
    p_mass.add_argument("--t", default="", help="coset shift, comma separated (default 0)")
    p_mass.add_argument("--s", type=float, required=True, help="Gaussian width s > 0")
    p_mass.add_argument("--tol", type=float, default=1e-9)
    p_mass.set_defaults(func=cmd_mass)

    p_poisson = sub.add_parser("poisson", help="check both Poisson summation sides")
    p_poisson.add_argument("--basis", required=True)
    p_poisson.add_argument("--t", default="")
    p_poisson.add_argument("--s", type=float, required=True)
    p_poisson.add_argument("--tol", type=float, default=1e-9)
    p_poisson.set_defaults(func=cmd_poisson)

    p_sweep = sub.add_parser("bounds-sweep", help="sweep all bounds over (n, c) into a CSV")
    p_sweep.add_argument("--n", required=True, help="comma-separated dimensions")
    p_sweep.add_argument("--c-start", type=float, default=1.0)
    p_sweep.add_argument("--c-stop", type=float, default=3.0)
    p_sweep.add_argument("--c-step", type=float, default=0.1)
    p_sweep.add_argument("--k", type=float, default=1.04)
    p_sweep.add_argument("--include-true-ratio", action="store_true",
                         help="measure the excluded-mass ratio on --basis")
    p_sweep.add_argument("--basis", default=None)
    p_sweep.add_argument("--s", type=float, default=1.0,
                         help="Gaussian width for the measured ratio (default 1)")
    p_sweep.add_argument("--tol", type=float, default=1e-9)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=cmd_bounds_sweep)

    p_verify = sub.add_parser("verify", help="run the inequality verification suite")
    p_verify.add_argument("--config", default=None, help="suite config JSON")
    p_verify.add_argument("--out", default="verify_report.jsonl")
    p_verify.add_argument("--negative-control", action="store_true",
                          help="corrupt the refined bound to prove failures are caught")
    p_verify.set_defaults(func=cmd_verify)

    p_advise = sub.add_parser("advise", help="smallest c for a target advantage")
    p_advise.add_argument("--n", type=int, required=True)
    p_advise.add_argument("--target", type=float, required=True,
                          help="target log2 advantage, e.g. -80 for 2^-80")
    p_advise.add_argument("--k", type=float, default=1.04)
    p_advise.set_defaults(func=cmd_advise)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, TolUnreachable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, NotFullRank, RankDeficient) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LatGaussError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
