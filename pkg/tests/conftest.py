"""Shared fixtures and independent brute-force oracles.

The oracles deliberately avoid the library's enumeration path: lattice
points come from an exhaustive coefficient box derived from dual-vector
norms (|<v - center, d_i>| <= radius ||d_i|| for every point in the ball),
and sums go through math.fsum.  They are the ground truth the fast paths
are checked against.
"""

import math

import numpy as np
import pytest

from latgauss import LatticeBasis, integer_lattice, random_lattice


def _oracle_box_ranges(b, center, radius):
    """Per-coordinate integer ranges covering the ball: |u_i - <c, d_i>| <= r ||d_i||."""
    dual = np.linalg.inv(b).T
    lows, sizes = [], []
    for i in range(b.shape[0]):
        mid = center @ dual[i]
        half = radius * math.sqrt(dual[i] @ dual[i])
        lo, hi = math.ceil(mid - half), math.floor(mid + half)
        lows.append(lo)
        sizes.append(max(hi - lo + 1, 0))
    return np.array(lows), np.array(sizes)


def _oracle_box_scan(rows, center, radius, chunk=2_000_000, limit=500_000_000):
    """Yield (points, squared distances to center) over the whole coefficient box."""
    b = np.asarray(rows, dtype=float)
    assert b.shape[0] == b.shape[1], "oracle supports full-rank bases"
    center = np.asarray(center, dtype=float)
    lows, sizes = _oracle_box_ranges(b, center, radius)
    total = int(np.prod(sizes, dtype=np.float64))
    if min(sizes) == 0:
        return
    assert total <= limit, f"oracle box too large: {total}"
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total))
        u = np.stack(np.unravel_index(flat, sizes), axis=1) + lows
        points = u.astype(float) @ b
        d2 = ((points - center) ** 2).sum(axis=1)
        yield points, d2


def oracle_box_points(rows, center, radius):
    """All lattice points v with ||v - center|| <= radius, by exhaustive box search."""
    n = np.asarray(rows).shape[1]
    collected = [
        points[d2 <= radius * radius] for points, d2 in _oracle_box_scan(rows, center, radius)
    ]
    collected = [p for p in collected if p.shape[0]]
    return np.concatenate(collected) if collected else np.zeros((0, n))


def oracle_coset_sum(rows, t, s, radius):
    """Direct sum of rho_s over the points of L + t inside the ball of the given radius."""
    t = np.asarray(t, dtype=float)
    terms = []
    for points, d2 in _oracle_box_scan(rows, -t, radius):
        inside = d2 <= radius * radius
        if inside.any():
            norms2 = ((points[inside] + t) ** 2).sum(axis=1)
            terms.append(np.exp(-(math.pi / (s * s)) * norms2))
    if not terms:
        return 0.0
    return math.fsum(np.concatenate(terms))


def oracle_minima(rows):
    """Successive minima from the box oracle: greedy span scan in norm order.

    Grows the scan radius geometrically (capped by the largest row norm,
    which bounds every minimum) so the exhaustive box stays affordable.
    """
    b = np.asarray(rows, dtype=float)
    n = b.shape[0]
    row_norms = np.sqrt((b**2).sum(axis=1))
    radius = float(row_norms.min())
    r_max = float(row_norms.max())
    while True:
        points = oracle_box_points(rows, np.zeros(b.shape[1]), radius)
        norms = np.sqrt((points**2).sum(axis=1))
        order = np.argsort(norms, kind="stable")
        values = []
        chosen = []
        for idx in order:
            if norms[idx] == 0.0:
                continue
            candidate = chosen + [points[idx]]
            if np.linalg.matrix_rank(np.array(candidate), tol=1e-9) > len(chosen):
                chosen = candidate
                values.append(float(norms[idx]))
                if len(values) == n:
                    return tuple(values)
        assert radius < r_max, "minima oracle failed to reach full span"
        radius = min(radius * 1.5, r_max)


@pytest.fixture(scope="session")
def z1():
    return integer_lattice(1)


@pytest.fixture(scope="session")
def z2():
    return integer_lattice(2)


@pytest.fixture(scope="session")
def suite_lattices():
    """A spread of small test lattices: both styles, dimensions 1..4."""
    out = []
    for style in ("unimodular_mix", "diagonal_scaled"):
        for n in (1, 2, 3, 4):
            for seed in (0, 1):
                out.append((f"{style}-n{n}-s{seed}", random_lattice(n, seed, style)))
    return out
