"""Log-space evaluation of the Gaussian tail and distinguishing bounds.

Every bound is computed and stored as a natural logarithm: the geometric
factor (e^(1-c^2))^(n/2) underflows double precision long before the
parameter ranges of interest (n = 500, c >= 2).  Sums of expanded terms go
through ``math.fsum`` so that algebraically cancelling terms cancel exactly
and identities between bounds hold to the last bit that doubles can carry.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, EpsilonTooLarge, RegimeViolation

LN2 = math.log(2.0)
TWO_PI = 2.0 * math.pi

# Regime of the 2x distinguishing constant: k >= 1.04 and n >= 500 make
# epsilon < 1/2, so 1/(1 - epsilon) <= 2.
REGIME_K = 1.04
REGIME_N = 500


def tau_radius(s: float, n: int) -> float:
    """The Gaussian ball radius tau = s * sqrt(n / (2 pi))."""
    if s <= 0:
        raise DomainError("s must be positive")
    return s * math.sqrt(n / TWO_PI)


@dataclass(frozen=True)
class TailParams:
    """Parameters of a tail/distinguishing bound instance."""

    c: float
    n: int
    k: float | None = None
    s: float | None = None
    r_x: float | None = None

    def __post_init__(self):
        if self.c < 1.0:
            raise DomainError("c must be >= 1")
        if self.n < 1:
            raise DomainError("n must be a positive integer")
        if self.s is not None and self.s <= 0:
            raise DomainError("s must be positive")
        if self.r_x is not None and self.r_x < 0:
            raise DomainError("r_x must be non-negative")

    @property
    def tau(self) -> float:
        if self.s is None:
            raise DomainError("tau requires s")
        return tau_radius(self.s, self.n)


@dataclass(frozen=True)
class BoundReport:
    """A computed bound: natural-log value plus the parameters that made it."""

    log_value: float
    params: TailParams
    kind: str

    @property
    def log2_value(self) -> float:
        return self.log_value / LN2


def _shape_log(x: float) -> float:
    """ln(x sqrt(e) e^(-x^2/2)) via the shifted expansion log1p(d) - d - d^2/2.

    With d = x - 1 (exact for x >= 1) the cancellation near the maximum at
    x = 1 happens analytically, so the result is ~ -d^2 with full relative
    accuracy and the correct (non-positive) sign for every x > 1.
    """
    d = x - 1.0
    return math.fsum([math.log1p(d), -d, -0.5 * d * d])


def classic_bound_log(c: float, n: int) -> float:
    """ln of (c sqrt(e) e^(-c^2/2))^n, the tail-to-total mass ratio bound.

    Equals n * (ln c + 1/2 - c^2/2); zero at c = 1.
    """
    if c < 1.0:
        raise DomainError(f"c must be >= 1, got {c}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return n * _shape_log(c)


def epsilon_log(k: float, n: int) -> float:
    """ln of epsilon = (k sqrt(e) e^(-k^2/2))^n; strictly negative for k > 1.

    k = 1 is the degenerate boundary (epsilon = 1) and k < 1 leaves the
    regime of the improved bound; both are flagged with a RegimeViolation
    warning but still evaluated.
    """
    if k <= 0:
        raise DomainError(f"k must be positive, got {k}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if k <= 1.0:
        warnings.warn(
            f"epsilon is only meaningful for k > 1 (got k={k}); value is for display",
            RegimeViolation,
            stacklevel=2,
        )
    return n * _shape_log(k)


def improved_bound_log(c: float, k: float, n: int) -> float:
    """ln of (e^(1-c^2))^(n/2) / (1 - epsilon), the large-lambda_1 tail bound.

    Requires c >= 1 and k > 1 (so that epsilon < 1).
    """
    if c < 1.0:
        raise DomainError(f"c must be >= 1, got {c}")
    if k < 1.0:
        raise DomainError(f"k must exceed 1, got {k}")
    eps_log = epsilon_log(k, n) if k > 1.0 else 0.0
    if eps_log >= 0.0:
        raise EpsilonTooLarge(f"epsilon >= 1 at k={k}, n={n}")
    eps = math.exp(eps_log)
    return math.fsum([0.5 * n, -0.5 * n * (c * c), -math.log1p(-eps)])


def sandwich_bounds_log(r_x: float, s: float, n: int):
    """(lower_log, upper_log) for the distinguishing ratio at distance r_x.

    lower = ln rho_s(r_x) = -pi r_x^2 / s^2;
    upper = ln of (r_x/tau)^n e^(n/2) rho_s(r_x), which by the substitution
    c = r_x/tau is exactly the classic tail bound at that c.
    Requires r_x >= tau.
    """
    tau = tau_radius(s, n)
    if r_x < tau:
        raise DomainError(f"r_x={r_x} is below tau={tau}; the sandwich needs r_x >= tau")
    lower = -math.pi * (r_x * r_x) / (s * s)
    upper = classic_bound_log(r_x / tau, n)
    return lower, upper


def in_two_x_regime(k: float, n: int) -> bool:
    """True when the 2x distinguishing constant is justified (k>=1.04, n>=500)."""
    return k >= REGIME_K and n >= REGIME_N


def improved_sandwich_log(c: float, k: float, n: int) -> float:
    """ln of 2 (e^(1-c^2))^(n/2), the simplified distinguishing upper bound.

    Valid as stated for k >= 1.04 and n >= 500.  Outside that regime the
    2x constant is not justified, so the function falls back to the exact
    1/(1-epsilon) form and emits a RegimeViolation warning.
    """
    if c < 1.0:
        raise DomainError(f"c must be >= 1, got {c}")
    if not in_two_x_regime(k, n):
        warnings.warn(
            f"(k={k}, n={n}) outside the 2x regime (k>=1.04, n>=500); "
            "falling back to the 1/(1-epsilon) bound",
            RegimeViolation,
            stacklevel=2,
        )
        return improved_bound_log(c, k, n)
    return math.fsum([LN2, 0.5 * n, -0.5 * n * (c * c)])


def unified_form_log(c: float, n: int, s: float, r_x: float) -> float:
    """ln of 2 e^(n/2) e^((pi/s^2)(r_x^2 - tau^2 c^2)) rho_s(r_x).

    The middle factor's radius symbol is read as tau = s sqrt(n/(2 pi)), the
    only reading under which the expression matches 2 (e^(1-c^2))^(n/2); the
    r_x-dependent factors then cancel identically.  The shared product
    pi r_x^2 / s^2 is computed once and the expanded terms are summed
    exactly, so the cancellation is bit-exact and the result is constant in
    r_x.  Note (pi/s^2) tau^2 = n/2 with the s^2 cancelling symbolically.
    """
    if c < 1.0:
        raise DomainError(f"c must be >= 1, got {c}")
    if s <= 0:
        raise DomainError("s must be positive")
    if r_x < 0:
        raise DomainError("r_x must be non-negative")
    if n < REGIME_N:
        warnings.warn(
            f"n={n} is below the 2x regime (n>=500)", RegimeViolation, stacklevel=2
        )
    pi_rx2 = math.pi * (r_x * r_x) / (s * s)
    return math.fsum([LN2, 0.5 * n, pi_rx2, -0.5 * n * (c * c), -pi_rx2])


def improvement_ratio_log(c: float, n: int) -> float:
    """ln of the classic bound over the 2x improved bound; simplifies to n ln c - ln 2.

    Computed by exact summation of the expanded difference
    classic_bound_log(c, n) - (ln 2 + (n/2)(1 - c^2)): the shared n/2 and
    n c^2/2 terms cancel exactly, leaving the correctly rounded value of
    n ln c - ln 2, so the two computation paths agree by construction.
    """
    if c < 1.0:
        raise DomainError(f"c must be >= 1, got {c}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    half_n = 0.5 * n
    half_ncc = 0.5 * n * (c * c)
    return math.fsum([n * math.log(c), half_n, -half_ncc, -LN2, -half_n, half_ncc])


_REPORT_KINDS = {
    "classic": lambda p: classic_bound_log(p.c, p.n),
    "epsilon": lambda p: epsilon_log(p.k, p.n),
    "improved": lambda p: improved_bound_log(p.c, p.k, p.n),
    "sandwich_lower": lambda p: sandwich_bounds_log(p.r_x, p.s, p.n)[0],
    "sandwich_upper": lambda p: sandwich_bounds_log(p.r_x, p.s, p.n)[1],
    "improved_sandwich": lambda p: improved_sandwich_log(p.c, p.k, p.n),
    "unified": lambda p: unified_form_log(p.c, p.n, p.s, p.r_x),
    "improvement_ratio": lambda p: improvement_ratio_log(p.c, p.n),
}


def report(kind: str, params: TailParams) -> BoundReport:
    """Evaluate a named bound into a BoundReport."""
    if kind not in _REPORT_KINDS:
        raise DomainError(f"unknown bound kind {kind!r}; choose from {sorted(_REPORT_KINDS)}")
    return BoundReport(log_value=_REPORT_KINDS[kind](params), params=params, kind=kind)
