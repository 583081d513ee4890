"""Exact lattice linear algebra.

Basis handling, Gram-Schmidt orthogonalization, dual bases, enumeration of
lattice points in balls, successive minima, and distance to the lattice.
All operations are pure functions of immutable inputs; the enumeration
budget is a per-call parameter.

Conventions: a basis is stored as a matrix whose *rows* are the basis
vectors, so the lattice is ``{u @ B : u integer row vector}``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, DomainError, NotFullRank, RankDeficient

DEFAULT_BUDGET = 10**8

# ||b_i*|| below this fraction of the largest basis-vector norm counts as
# numerically dependent.  Inputs are small exact integers/rationals in
# practice, so this only catches genuine degeneracy.
RANK_RTOL = 1e-9

# Relative inflation of the squared pruning radius during enumeration.  The
# depth-first search over-covers the ball by this margin and exact membership
# is decided by a final distance test in ambient coordinates, so rounding in
# the Gram-Schmidt frame can never drop a boundary point.
_PRUNE_REL = 1e-9


@dataclass(frozen=True)
class LatticeBasis:
    """An ordered lattice basis: rows of ``vectors`` generate the lattice.

    ``det`` is the r-dimensional covolume sqrt(det(B B^T)), which equals
    |det B| for full-rank bases.
    """

    vectors: np.ndarray
    ambient_dim: int
    det: float

    def __post_init__(self):
        self.vectors.setflags(write=False)

    @property
    def rank(self) -> int:
        return self.vectors.shape[0]

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    @classmethod
    def from_rows(cls, rows) -> "LatticeBasis":
        b = np.array(rows, dtype=float)
        if b.ndim == 1:
            b = b.reshape(1, -1)
        if b.ndim != 2 or b.size == 0:
            raise DomainError("basis must be a non-empty 2-D array of row vectors")
        r, n = b.shape
        if r > n:
            raise RankDeficient(f"{r} vectors cannot be independent in dimension {n}")
        _, _, g = _gram_schmidt_arrays(b)  # raises RankDeficient on dependent rows
        det = float(np.prod(np.sqrt(g)))
        return cls(vectors=b, ambient_dim=n, det=det)

    @classmethod
    def from_json(cls, text: str) -> "LatticeBasis":
        obj = json.loads(text)
        if not isinstance(obj, dict) or "vectors" not in obj:
            raise DomainError('basis JSON must be an object {"vectors": [[...], ...]}')
        return cls.from_rows(obj["vectors"])

    @classmethod
    def from_text(cls, text: str) -> "LatticeBasis":
        rows = [[float(tok) for tok in line.split()] for line in text.splitlines() if line.strip()]
        if not rows:
            raise DomainError("basis file contains no rows")
        if len({len(row) for row in rows}) != 1:
            raise DomainError("basis rows have inconsistent lengths")
        return cls.from_rows(rows)


def load_basis(path) -> LatticeBasis:
    """Read a basis from a JSON object or a whitespace-separated matrix file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return LatticeBasis.from_json(text)
    return LatticeBasis.from_text(text)


def integer_lattice(n: int) -> LatticeBasis:
    """The standard integer lattice Z^n."""
    return LatticeBasis.from_rows(np.eye(n))


@dataclass(frozen=True)
class GramSchmidt:
    """Gram-Schmidt data: orthogonal vectors b_i* and coefficients mu_{i,j}."""

    orthogonal_vectors: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        self.orthogonal_vectors.setflags(write=False)
        self.mu.setflags(write=False)

    @property
    def norms(self) -> np.ndarray:
        return np.sqrt((self.orthogonal_vectors**2).sum(axis=1))


@dataclass(frozen=True)
class SuccessiveMinima:
    """The values lambda_1 <= ... <= lambda_r."""

    values: tuple

    def __post_init__(self):
        if any(b < a for a, b in zip(self.values, self.values[1:])):
            raise DomainError("successive minima must be non-decreasing")


def _gram_schmidt_arrays(b: np.ndarray):
    """Modified Gram-Schmidt in the given row order; no reordering.

    Returns (bstar, mu, g) with g_i = ||b_i*||^2.  Raises RankDeficient when
    some ||b_i*|| falls below RANK_RTOL times the largest basis-vector norm.
    """
    r, n = b.shape
    bstar = np.zeros((r, n))
    mu = np.zeros((r, r))
    g = np.zeros(r)
    max_norm = float(np.sqrt((b**2).sum(axis=1).max()))
    if max_norm == 0.0:
        raise RankDeficient("zero basis vector")
    for i in range(r):
        v = b[i].astype(float).copy()
        for j in range(i):
            mu[i, j] = (v @ bstar[j]) / g[j]
            v -= mu[i, j] * bstar[j]
        mu[i, i] = 1.0
        nv = float(np.sqrt(v @ v))
        if nv < RANK_RTOL * max_norm:
            raise RankDeficient(f"vector {i} is numerically dependent on the previous ones")
        bstar[i] = v
        g[i] = v @ v
    return bstar, mu, g


def gram_schmidt(basis: LatticeBasis) -> GramSchmidt:
    """Standard Gram-Schmidt orthogonalization of the basis order as given."""
    bstar, mu, _ = _gram_schmidt_arrays(basis.vectors)
    return GramSchmidt(orthogonal_vectors=bstar, mu=mu)


def dual_basis(basis: LatticeBasis) -> LatticeBasis:
    """The dual basis D with <b_i, d_j> = delta_ij; requires full rank.

    det(D) = 1/det(basis).  Non-full-rank lattices are rejected rather than
    implicitly projected onto their span.
    """
    if not basis.is_full_rank:
        raise NotFullRank(
            f"dual basis needs rank == dimension, got rank {basis.rank} in dimension {basis.ambient_dim}"
        )
    try:
        inv = np.linalg.inv(basis.vectors)
    except np.linalg.LinAlgError as exc:
        raise RankDeficient(f"basis matrix is numerically singular: {exc}") from exc
    return LatticeBasis.from_rows(inv.T)


def _predicted_count(g: np.ndarray, radius: float) -> float:
    """Upper estimate of the enumeration point count (Fincke-Pohst box)."""
    est = 1.0
    for gi in g:
        est *= 2.0 * radius / math.sqrt(gi) + 1.0
    return est


def _enumerate_core(b, center, radius, budget, t=None, want_u=True):
    """Depth-first Fincke-Pohst enumeration of {u : ||u @ b - center|| <= ~radius}.

    Returns (U, costs, dots):
      U     -- (m, r) integer coefficient matrix (None when ``want_u`` is off;
               mass computations need only the costs),
      costs -- squared distances to ``center`` accumulated in the
               Gram-Schmidt frame (pruned against an inflated radius; apply a
               final exact filter when closed-ball semantics matter),
      dots  -- inner products <u @ b, t> when ``t`` is given, else None.

    The innermost level is vectorized; recursion depth equals the rank.
    """
    bstar, mu, g = _gram_schmidt_arrays(b)
    r, n = b.shape
    center = np.asarray(center, dtype=float)
    gamma = np.array([(center @ bstar[j]) / g[j] for j in range(r)])
    residual = center - gamma @ bstar
    res2 = float(residual @ residual)
    if r == n:
        res2 = 0.0  # full-rank projection residual is pure rounding noise
    # Absolute slack covering Gram-Schmidt-frame rounding noise in the cost
    # of points at (near-)zero true distance; the exact ambient-coordinate
    # filter downstream still decides membership.
    noise = (1e-12 * (1.0 + math.sqrt(float(center @ center)))) ** 2
    r2 = radius * radius * (1.0 + _PRUNE_REL) + noise

    if _predicted_count(g, radius) > budget:
        raise BudgetExceeded(
            f"predicted point count exceeds budget {budget} at radius {radius:.6g}"
        )

    tb = b @ np.asarray(t, dtype=float) if t is not None else None

    blocks_u0 = []
    blocks_suffix = []
    blocks_cost = []
    blocks_dot = []
    count = 0

    def descend(level, shift, suffix, partial, pdot):
        nonlocal count
        rem = r2 - res2 - partial
        if rem < 0.0:
            return
        x = gamma[level] - shift[level]
        h = math.sqrt(rem / g[level])
        lo = math.ceil(x - h)
        hi = math.floor(x + h)
        if hi < lo:
            return
        if level == 0:
            u0 = np.arange(lo, hi + 1, dtype=np.int64)
            w = (u0 - x).astype(float)
            costs = partial + res2 + w * w * g[0]
            keep = costs <= r2
            m = int(keep.sum())
            if m == 0:
                return
            count += m
            if count > budget:
                raise BudgetExceeded(f"enumeration exceeded budget of {budget} points")
            blocks_u0.append(u0[keep])
            blocks_suffix.append(suffix)
            blocks_cost.append(costs[keep])
            if tb is not None:
                blocks_dot.append(pdot + u0[keep] * tb[0])
            return
        for ui in range(lo, hi + 1):
            w = ui - x
            add = w * w * g[level]
            if add > rem:
                continue
            new_shift = shift.copy()
            new_shift[:level] += ui * mu[level, :level]
            descend(
                level - 1,
                new_shift,
                (ui,) + suffix,
                partial + add,
                pdot + (ui * tb[level] if tb is not None else 0.0),
            )

    descend(r - 1, np.zeros(r), (), 0.0, 0.0)

    if count == 0:
        empty_u = np.zeros((0, r), dtype=np.int64) if want_u else None
        return empty_u, np.zeros(0), (np.zeros(0) if tb is not None else None)

    total = sum(len(u0) for u0 in blocks_u0)
    U = np.empty((total, r), dtype=np.int64) if want_u else None
    costs = np.empty(total)
    dots = np.empty(total) if tb is not None else None
    pos = 0
    for i, u0 in enumerate(blocks_u0):
        m = len(u0)
        if want_u:
            U[pos : pos + m, 0] = u0
            if r > 1:
                U[pos : pos + m, 1:] = blocks_suffix[i]
        costs[pos : pos + m] = blocks_cost[i]
        if dots is not None:
            dots[pos : pos + m] = blocks_dot[i]
        pos += m
    return U, costs, dots


def enumerate_in_ball(
    basis: LatticeBasis, center, radius: float, budget: int = DEFAULT_BUDGET
) -> np.ndarray:
    """All lattice points v with ||v - center|| <= radius (closed ball).

    Each point is reported once, in deterministic order: sorted by norm,
    then lexicographically by coordinates.
    """
    if radius < 0:
        raise DomainError("radius must be non-negative")
    center = np.asarray(center, dtype=float)
    if center.shape != (basis.ambient_dim,):
        raise DomainError(
            f"center has dimension {center.shape}, expected ({basis.ambient_dim},)"
        )
    U, _, _ = _enumerate_core(basis.vectors, center, radius, budget)
    n = basis.ambient_dim
    if U.shape[0] == 0:
        return np.zeros((0, n))
    points = U.astype(float) @ basis.vectors
    d2 = ((points - center) ** 2).sum(axis=1)
    points = points[d2 <= radius * radius]
    if points.shape[0] == 0:
        return np.zeros((0, n))
    norms2 = (points**2).sum(axis=1)
    keys = tuple(points[:, k] for k in reversed(range(n))) + (norms2,)
    return points[np.lexsort(keys)]


def successive_minima(
    basis: LatticeBasis, budget: int = DEFAULT_BUDGET, max_dim: int = 10
) -> SuccessiveMinima:
    """lambda_1 <= ... <= lambda_n by enumeration within growing radii.

    Tracks the dimension of the span of the points found so far, exactly
    matching the min-over-t definition.
    """
    if not basis.is_full_rank:
        raise NotFullRank("successive minima implemented for full-rank lattices only")
    n = basis.ambient_dim
    if n > max_dim:
        raise DomainError(f"dimension {n} exceeds the enumeration limit {max_dim}")
    row_norms = np.sqrt((basis.vectors**2).sum(axis=1))
    r_max = float(row_norms.max())  # lambda_i <= max_j ||b_j|| for every i
    radius = float(row_norms.min())
    while True:
        points = enumerate_in_ball(basis, np.zeros(n), radius, budget)
        values = []
        ortho = []  # orthonormal basis of the span of selected points
        for p in points:
            norm = float(np.sqrt(p @ p))
            if norm == 0.0:
                continue
            res = p.copy()
            for q in ortho:
                res -= (res @ q) * q
            res_norm = float(np.sqrt(res @ res))
            if res_norm > 1e-9 * norm:
                ortho.append(res / res_norm)
                values.append(norm)
                if len(values) == n:
                    break
        if len(values) == n:
            return SuccessiveMinima(values=tuple(values))
        if radius >= r_max:
            raise RankDeficient("could not reach full span within the basis-norm radius")
        radius = min(radius * 1.5, r_max)


def dist_to_lattice(basis: LatticeBasis, x, budget: int = DEFAULT_BUDGET):
    """(distance, closest lattice vector): min over v in L of ||x - v||.

    A nearest-plane pass supplies the initial search radius; the reported
    minimum comes from exact enumeration of the closed ball, so the result
    is the true distance rather than a rounding heuristic.
    """
    if not basis.is_full_rank:
        raise NotFullRank("dist_to_lattice implemented for full-rank lattices only")
    x = np.asarray(x, dtype=float)
    if x.shape != (basis.ambient_dim,):
        raise DomainError(f"point has dimension {x.shape}, expected ({basis.ambient_dim},)")
    b = basis.vectors
    bstar, _, g = _gram_schmidt_arrays(b)
    y = x.copy()
    coeff = np.zeros(basis.rank, dtype=np.int64)
    for i in reversed(range(basis.rank)):
        c = round(float((y @ bstar[i]) / g[i]))
        coeff[i] = c
        y -= c * b[i]
    v0 = coeff.astype(float) @ b
    d0 = float(np.sqrt(((x - v0) ** 2).sum()))
    points = enumerate_in_ball(basis, x, d0 * (1.0 + 1e-12) + 1e-300, budget)
    d2 = ((points - x) ** 2).sum(axis=1)
    best = d2.min()
    ties = points[d2 == best]
    if ties.shape[0] > 1:
        order = np.lexsort(tuple(ties[:, k] for k in reversed(range(ties.shape[1]))))
        closest = ties[order[0]]
    else:
        closest = ties[0]
    return float(np.sqrt(best)), closest
