"""Gaussian point values and certified lattice/coset Gaussian masses.

Masses are computed by direct summation over enumerated points together
with a rigorous two-sided truncation bound: the true mass always lies in
[value, value + tail_bound].  The tail is certified with the package's own
refined tail inequality, so no external tail estimates enter the computation.
No theta-function shortcuts are used, by design: the sums stay independent
oracles for the bounds they are later checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import classic_bound_log, tau_radius
from .errors import DomainError, NotFullRank, TolUnreachable
from .lattice import (
    DEFAULT_BUDGET,
    LatticeBasis,
    _enumerate_core,
    _gram_schmidt_arrays,
    _predicted_count,
    dist_to_lattice,
    dual_basis,
)

_FSUM_CUTOFF = 200_000


@dataclass(frozen=True)
class GaussianParam:
    """Width s > 0 of the Gaussian rho_s(x) = exp(-pi ||x||^2 / s^2)."""

    s: float

    def __post_init__(self):
        if not self.s > 0:
            raise DomainError(f"s must be positive, got {self.s}")


@dataclass(frozen=True)
class MassResult:
    """A truncated Gaussian mass with certified tail.

    The true mass lies in [value, value + tail_bound]; on success
    tail_bound does not exceed the requested tolerance.
    """

    value: float
    tail_bound: float
    radius: float
    points_used: int


@dataclass(frozen=True)
class ComplexMass:
    """A truncated character-weighted dual mass; both parts carry one tail bound."""

    real_part: float
    imag_part: float
    tail_bound: float


def _width(s) -> float:
    w = s.s if isinstance(s, GaussianParam) else float(s)
    if not w > 0:
        raise DomainError(f"s must be positive, got {w}")
    return w


def rho_point(s, x) -> float:
    """rho_s(x) = exp(-pi ||x||^2 / s^2); scalar x means ||x|| = |x|."""
    return math.exp(rho_point_log(s, x))


def rho_point_log(s, x) -> float:
    """ln rho_s(x), safe far into the underflow range of rho_point."""
    w = _width(s)
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    nrm2 = float((arr * arr).sum())
    return -math.pi * nrm2 / (w * w)


def _stable_sum(terms: np.ndarray) -> float:
    """Deterministic compensated summation, accurate independent of count."""
    if terms.size == 0:
        return 0.0
    if terms.size <= _FSUM_CUTOFF:
        return math.fsum(terms)
    order = np.argsort(np.abs(terms), kind="stable")
    return float(np.sum(terms[order], dtype=np.longdouble))


def _solve_tail_c(target_log: float, n: int) -> float:
    """Smallest-ish c >= 1 with classic_bound_log(c, n) <= target_log (bisection)."""
    if classic_bound_log(1.0, n) <= target_log:
        return 1.0
    hi = 2.0
    while classic_bound_log(hi, n) > target_log:
        hi *= 2.0
        if hi > 2.0**40:
            raise TolUnreachable("tail radius search diverged")
    lo = hi / 2.0 if hi > 2.0 else 1.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if classic_bound_log(mid, n) <= target_log:
            hi = mid
        else:
            lo = mid
    return hi


def _certified_radius(basis: LatticeBasis, s: float, tol: float, budget: int):
    """Radius R and tail bound with rho_s((L+t) outside B(0,R)) <= tail <= tol.

    A coarse pass at radius 2*tau over-estimates rho_s(L) via the geometric
    bound T/(1-beta) (beta < 1/2 holds at c = 2 for every n); the final
    radius c*tau is then chosen so the refined tail factor times that
    over-estimate stays below tol/2.  The certificate is uniform in the
    coset shift t.
    """
    n = basis.rank
    tau = tau_radius(s, n)
    _, coarse_costs, _ = _enumerate_core(
        basis.vectors, np.zeros(basis.ambient_dim), 2.0 * tau, budget, want_u=False
    )
    coarse = _stable_sum(np.exp(-(math.pi / (s * s)) * coarse_costs))
    beta0 = math.exp(classic_bound_log(2.0, n))
    mass_upper = coarse / (1.0 - beta0)
    target = math.log(tol) - math.log(2.0) - math.log(mass_upper)
    c = _solve_tail_c(target, n)
    tail = math.exp(classic_bound_log(c, n)) * mass_upper
    return c * tau, tail


def _reduce_mod_lattice(basis: LatticeBasis, t: np.ndarray, budget: int) -> np.ndarray:
    """Shift t by its closest lattice vector; rho_s(L+t) is invariant under this."""
    if not np.any(t):
        return t
    _, closest = dist_to_lattice(basis, t, budget)
    return t - closest


def _check_mass_args(basis: LatticeBasis, t, tol: float):
    if not basis.is_full_rank:
        raise NotFullRank("mass computations require a full-rank basis")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    t = np.asarray(t, dtype=float)
    if t.shape != (basis.ambient_dim,):
        raise DomainError(f"t has dimension {t.shape}, expected ({basis.ambient_dim},)")
    return t


def coset_mass(
    basis: LatticeBasis, t, s, tol: float, budget: int = DEFAULT_BUDGET
) -> MassResult:
    """rho_s(L + t) with certified truncation error below tol; t = 0 gives rho_s(L).

    Points are accumulated in order of increasing norm with compensated
    summation.
    """
    w = _width(s)
    t = _check_mass_args(basis, t, tol)
    t_red = _reduce_mod_lattice(basis, t, budget)
    radius, tail = _certified_radius(basis, w, tol, budget)
    _, _, g = _gram_schmidt_arrays(basis.vectors)
    if _predicted_count(g, radius) > budget:
        raise TolUnreachable(
            f"certified radius {radius:.6g} needs more than {budget} points"
        )
    _, costs, _ = _enumerate_core(basis.vectors, -t_red, radius, budget, want_u=False)
    costs = np.sort(costs)
    value = _stable_sum(np.exp(-(math.pi / (w * w)) * costs))
    return MassResult(value=value, tail_bound=tail, radius=radius, points_used=costs.size)


def excluded_mass(
    basis: LatticeBasis,
    t,
    s,
    threshold: float,
    tol: float,
    budget: int = DEFAULT_BUDGET,
) -> MassResult:
    """Mass of the points of L + t with norm >= threshold, tail certified as in coset_mass.

    The summation condition is ||u|| >= threshold (closed from below, the
    inequality direction of the tail estimates); points within a relative
    1e-12 of the threshold count as excluded so boundary points can never
    silently drop out of the left-hand side of an inequality check.
    """
    if threshold < 0:
        raise DomainError(f"threshold must be non-negative, got {threshold}")
    w = _width(s)
    t = _check_mass_args(basis, t, tol)
    t_red = _reduce_mod_lattice(basis, t, budget)
    radius, tail = _certified_radius(basis, w, tol, budget)
    reach = max(radius, threshold)
    _, _, g = _gram_schmidt_arrays(basis.vectors)
    if _predicted_count(g, reach) > budget:
        raise TolUnreachable(f"radius {reach:.6g} needs more than {budget} points")
    _, costs, _ = _enumerate_core(basis.vectors, -t_red, reach, budget, want_u=False)
    boundary = threshold * threshold * (1.0 - 1e-12)
    outside = np.sort(costs[costs >= boundary])
    value = _stable_sum(np.exp(-(math.pi / (w * w)) * outside))
    return MassResult(value=value, tail_bound=tail, radius=radius, points_used=outside.size)


def poisson_check(
    basis: LatticeBasis, t, s, tol: float, budget: int = DEFAULT_BUDGET
):
    """Both sides of the coset Poisson identity by independent direct summation.

    lhs: rho_s(L + t) summed over the primal lattice.
    rhs: (s^n / det L) * sum over w in L* of e^(2 pi i <t, w>) rho_{1/s}(w),
         summed over the dual lattice with real/imaginary accumulators; the
         imaginary part is reported, not assumed zero.
    Returns (lhs, rhs, agreement) with agreement = |lhs.value - rhs.real_part|.
    """
    w = _width(s)
    t = _check_mass_args(basis, t, tol)
    lhs = coset_mass(basis, t, w, tol, budget)

    dual = dual_basis(basis)
    n = basis.ambient_dim
    scale = w**n / basis.det
    tol_dual = tol / scale
    t_red = _reduce_mod_lattice(basis, t, budget)
    radius, tail_dual = _certified_radius(dual, 1.0 / w, tol_dual, budget)
    _, _, g = _gram_schmidt_arrays(dual.vectors)
    if _predicted_count(g, radius) > budget:
        raise TolUnreachable(f"dual radius {radius:.6g} needs more than {budget} points")
    _, costs, dots = _enumerate_core(
        dual.vectors, np.zeros(n), radius, budget, t=t_red, want_u=False
    )
    order = np.argsort(costs, kind="stable")
    costs = costs[order]
    dots = dots[order]
    weights = np.exp(-math.pi * (w * w) * costs)  # rho_{1/s} at squared norm `costs`
    phases = 2.0 * math.pi * dots
    real = _stable_sum(weights * np.cos(phases))
    imag = _stable_sum(weights * np.sin(phases))
    rhs = ComplexMass(
        real_part=scale * real, imag_part=scale * imag, tail_bound=scale * tail_dual
    )
    agreement = abs(lhs.value - rhs.real_part)
    return lhs, rhs, agreement
