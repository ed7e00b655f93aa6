"""Markov chains on the strands of positive string links.

For a positive diagram and ``0 < t <= 1`` every walk weight is a genuine
probability, so ``B(t)`` is row-stochastic: a particle entering at source
``i`` leaves at sink ``j`` with probability ``B_ij``.  Iterating the
diagram iterates the chain.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .diagram import render_tangle
from .engine import Sink, build_system, burau_at, burau_matrix, primitivity_index, reachability
from .errors import DomainError
from .ratfun import parse_t0
from .rng import stream_state

__all__ = [
    "StochasticMatrix",
    "WalkEstimate",
    "StationaryDistribution",
    "PersistenceReport",
    "evaluate_stochastic",
    "simulate_walks",
    "persistence_exponent",
    "stationary",
    "entropy_rate",
    "persistence_check",
    "row_entropies",
    "zero_limit",
]

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class StochasticMatrix:
    matrix: np.ndarray
    t_value: object
    provenance: str

    @property
    def n(self):
        return self.matrix.shape[0]


@dataclass(frozen=True)
class WalkEstimate:
    counts: np.ndarray
    trials: int
    seed: int
    t_value: object

    @property
    def frequencies(self):
        return self.counts / self.trials


@dataclass(frozen=True)
class StationaryDistribution:
    u: np.ndarray
    iterations: int
    residual: float
    limit_rows: np.ndarray = field(repr=False)
    limit_gap: float = 0.0


@dataclass(frozen=True)
class PersistenceReport:
    regular: bool
    exponent: Optional[int]
    n_max: int
    partial_sums: np.ndarray
    slopes: np.ndarray
    limit: np.ndarray
    u: Optional[np.ndarray]
    never_visited: tuple  # (i, j) pairs with p_ij^(n) = 0 for every n <= n_max
    all_persistent: bool


def _provenance(d):
    return hashlib.sha256(render_tangle(d).encode()).hexdigest()[:16]


def _check_t(t0, closed_right=True):
    t0 = parse_t0(t0)
    ok = 0 < t0 <= 1 if closed_right else 0 < t0 < 1
    if not ok:
        interval = "(0, 1]" if closed_right else "(0, 1)"
        raise DomainError(f"t must lie in {interval}, got {t0}")
    return t0


def _require_positive(d):
    if not d.is_positive():
        raise DomainError("Markov layer requires positive string links")


def evaluate_stochastic(d, t0):
    """``B(d)`` at ``t = t0`` as a checked row-stochastic float matrix."""
    _require_positive(d)
    t0 = _check_t(t0)
    rows = burau_at(d, t0)
    if isinstance(t0, Fraction):
        # exact: nonnegativity and unit row sums hold with no tolerance
        for i, r in enumerate(rows):
            if any(x < 0 for x in r) or sum(r) != 1:
                raise AssertionError(f"row {i + 1} of B(t={t0}) is not a probability vector")
        P = np.array([[float(x) for x in r] for r in rows], dtype=float)
    else:
        P = np.array(rows, dtype=float)
        if (P < -ROW_SUM_TOL).any() or np.abs(P.sum(axis=1) - 1).max() > ROW_SUM_TOL:
            raise AssertionError(f"B(t={t0}) is not stochastic within {ROW_SUM_TOL}")
        P = np.clip(P, 0.0, None)
    return StochasticMatrix(P, t0, _provenance(d))


def zero_limit(d):
    """``B(d)`` at ``t = 0`` with its row sums, as a diagnostic only.

    Every drop is certain in this limit.  Whether the result is stochastic
    is reported, not asserted.
    """
    _require_positive(d)
    rows = burau_matrix(d).evaluate(Fraction(0))
    P = np.array([[float(x) for x in r] for r in rows], dtype=float)
    stochastic = all(all(x >= 0 for x in r) and sum(r) == 1 for r in rows)
    return P, stochastic


def _kernel_arrays(system):
    def code(node):
        return -node.position if isinstance(node, Sink) else node

    stay = np.array([code(x) for x in system.stay], dtype=np.int64)
    jump = np.array([code(x) for x in system.jump], dtype=np.int64)
    starts = [code(x) for x in system.entry]
    return stay, jump, starts


def simulate_walks(d, t0, trials, seed, kernel=None):
    """Drop a ball into every lane ``trials`` times and count where it ends.

    At each upper-segment encounter the ball stays with probability ``t0``
    and drops to the lower segment otherwise.  ``kernel`` overrides the
    backend chosen in :mod:`burauwalk.kernels`.
    """
    _require_positive(d)
    t0 = _check_t(t0, closed_right=False)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    kernel = kernel or kernels.walk_counts
    system = build_system(d)
    stay, jump, starts = _kernel_arrays(system)
    prob = np.full(len(system.variables), float(t0), dtype=np.float64)
    rows = []
    for i, start in enumerate(starts, start=1):
        counts, _ = kernel(stay, jump, prob, start, d.n, trials, stream_state(seed, i))
        rows.append(counts)
    return WalkEstimate(np.array(rows, dtype=np.int64), trials, seed, t0)


def persistence_exponent(d):
    """Least ``N`` such that every source reaches every sink in ``d^N``, if any."""
    return primitivity_index(reachability(d))


def _power_iteration(P, tol, max_iter):
    n = P.shape[0]
    u = np.full(n, 1.0 / n)
    for it in range(1, max_iter + 1):
        nu = u @ P
        res = np.abs(nu - u).max()
        u = nu / nu.sum()
        if res <= tol:
            return u, it
    raise DomainError(f"power iteration did not converge in {max_iter} steps")


def stationary(d, t0, tol=1e-13, max_iter=1_000_000):
    """Stationary distribution of a regular chain, checked against ``lim P^n``."""
    t0 = _check_t(t0, closed_right=False)
    if persistence_exponent(d) is None:
        raise DomainError(
            "chain is not regular: no power of the diagram joins every source to every sink"
        )
    P = evaluate_stochastic(d, t0).matrix
    u, iterations = _power_iteration(P, tol, max_iter)
    residual = float(np.abs(u @ P - u).max())
    Q = P.copy()
    gap = float(np.abs(Q - u).max())
    for _ in range(64):
        if gap <= tol:
            break
        Q = Q @ Q
        gap = float(np.abs(Q - u).max())
    return StationaryDistribution(u, iterations, residual, Q, gap)


def row_entropies(P):
    """Shannon entropy of every row, in bits, with ``0 log 0 = 0``."""
    out = []
    for row in np.asarray(P, dtype=float):
        out.append(-sum(p * math.log2(p) for p in row if p > 0))
    return np.array(out)


def entropy_rate(d, t0):
    """``-sum_i u_i sum_j p_ij log2 p_ij`` in bits."""
    _require_positive(d)
    t0 = _check_t(t0)
    P = evaluate_stochastic(d, t0).matrix
    H = row_entropies(P)
    if not H.any():
        return 0.0
    u = stationary(d, t0).u
    return float(u @ H)


def persistence_check(d, t0, n_max=200):
    """Partial sums of ``p_ij^(n)`` and the limit rows that certify persistence.

    Slopes are measured over the second half of the horizon,
    ``(S(n_max) - S(n_max // 2)) / (n_max - n_max // 2)``, so the constant
    transient offset of ``S(n)`` cancels.
    """
    _require_positive(d)
    t0 = _check_t(t0, closed_right=False)
    P = evaluate_stochastic(d, t0).matrix
    n = P.shape[0]
    half = n_max // 2
    S = np.zeros((n, n))
    S_half = None
    Pn = np.eye(n)
    ever = np.zeros((n, n), dtype=bool)
    for k in range(1, n_max + 1):
        Pn = Pn @ P
        S += Pn
        ever |= Pn > 0
        if k == half:
            S_half = S.copy()
    slopes = (S - S_half) / (n_max - half)
    N = persistence_exponent(d)
    u = None
    if N is not None:
        u = stationary(d, t0).u
        persistent = bool((Pn > 0).all())
    else:
        # Cesaro slope of the diagonal separates persistent from transient states
        persistent = bool((np.diag(slopes) > 1e-9).all())
    never = tuple((i + 1, j + 1) for i in range(n) for j in range(n) if not ever[i, j])
    return PersistenceReport(N is not None, N, n_max, S, slopes, Pn, u, never, persistent)
