"""Parameter selection for the bound family: best kappa at a point, the
empirical maximal weight for a fixed order, and the best single kappa over
an interval.  All searches are deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .bounds import alpha_coeff, as_kappa, g_lower, x1_point
from .errors import DomainError
from .special import mills_ratio, q

#: Search ceiling for kappa; the optimum drifts toward 1 for large x and
#: toward infinity as x -> 0.
KAPPA_MAX = 1e6

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of a one-dimensional search.

    argument is the optimal kappa or x depending on the operation; gap is
    the relative looseness (Q - g)/Q at the optimum where that is
    meaningful, else None.
    """

    argument: float
    objective: float
    gap: float | None
    iterations: int
    converged: bool
    message: str = ""


def _golden_max(fn, a: float, b: float, tol: float):
    """Golden-section maximization of fn on [a, b] to bracket width tol."""
    h_w = b - a
    if h_w <= tol:
        m = 0.5 * (a + b)
        return m, fn(m), 0
    n = int(math.ceil(math.log(tol / h_w) / math.log(_INV_PHI)))
    c = b - _INV_PHI * h_w
    d = a + _INV_PHI * h_w
    fc, fd = fn(c), fn(d)
    for _ in range(n):
        if fc > fd:
            b, d, fd = d, c, fc
            h_w *= _INV_PHI
            c = b - _INV_PHI * h_w
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            h_w *= _INV_PHI
            d = a + _INV_PHI * h_w
            fd = fn(d)
    if fc > fd:
        return c, fc, n
    return d, fd, n


def _coarse_then_golden(fn, lo: float, hi: float, n_coarse: int, tol: float):
    """Log-spaced coarse scan over [lo, hi], then golden refinement of every
    bracket where the discrete slope changes sign (the objective is only
    assumed unimodal after the scan confirms it)."""
    grid = np.geomspace(lo, hi, n_coarse)
    vals = np.array([fn(g) for g in grid])
    i_best = int(np.argmax(vals))
    slope = np.sign(np.diff(vals))
    brackets = [
        i
        for i in range(1, n_coarse - 1)
        if slope[i - 1] > 0 and slope[i] < 0
    ]
    if i_best not in brackets:
        brackets.append(i_best)
    best = (grid[i_best], vals[i_best], 0)
    iters = 0
    for i in brackets:
        a = grid[max(i - 1, 0)]
        b = grid[min(i + 1, n_coarse - 1)]
        arg, val, it = _golden_max(fn, a, b, tol)
        iters += it
        if val > best[1]:
            best = (arg, val, iters)
    at_edge = i_best in (0, n_coarse - 1)
    return best[0], best[1], iters, at_edge


def kappa_star(x: float) -> OptimizationResult:
    """The kappa maximizing g(x, kappa) at a fixed point x > 0.

    At x = 0 the supremum 1/2 is approached only as kappa -> inf; that case
    is reported as non-converged with the search ceiling as argument.
    """
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"kappa_star requires x > 0, got {x}")
    if x == 0.0:
        return OptimizationResult(
            argument=KAPPA_MAX,
            objective=g_lower(0.0, KAPPA_MAX),
            gap=(0.5 - g_lower(0.0, KAPPA_MAX)) / 0.5,
            iterations=0,
            converged=False,
            message="supremum at x=0 is approached only as kappa -> inf",
        )

    def objective(kap: float) -> float:
        return g_lower(x, kap)

    arg, val, iters, at_edge = _coarse_then_golden(
        objective, 1.0 + 1e-9, KAPPA_MAX, 600, 1e-8
    )
    qx = q(x)
    return OptimizationResult(
        argument=arg,
        objective=val,
        gap=(qx - val) / qx,
        iterations=iters,
        converged=not at_edge,
    )


def max_weight(k) -> OptimizationResult:
    """Empirical maximal admissible weight for order kappa/2:
    alpha_max(kappa) = inf over x of Q(x) * exp(kappa * x**2 / 2).

    The infimum sits at the root of kappa*x*R(x) = 1, which lies in (0, x1]
    by the sign structure of the proof; the objective is minimized through
    its logarithm to avoid overflow.  alpha_max >= alpha(kappa) always; a
    violation would contradict the theorem and is raised as fatal.
    """
    k = as_kappa(k)
    if k.kappa <= 1.0:
        raise DomainError("max_weight requires kappa > 1")
    x1 = x1_point(k)

    def slope(x: float) -> float:
        # d/dx [ln Q + kappa x^2/2] = kappa*x - 1/R(x)
        return k.kappa * x * mills_ratio(x) - 1.0

    # Bracket the stationary point from x1 downward; slope(0) = -1 < 0 and
    # slope(x1) >= 0 by the Mills-ratio relation at x1.
    grid = np.linspace(0.0, x1, 257)
    sl = np.array([slope(g) for g in grid])
    idx = np.nonzero(np.diff(np.sign(sl)) != 0)[0]
    best_x, best_phi = x1, math.log(q(x1)) + 0.5 * k.kappa * x1 * x1
    iters = 0
    for i in idx:
        root = brentq(slope, grid[i], grid[i + 1], xtol=1e-14, rtol=8.9e-16)
        iters += 1
        phi = math.log(q(root)) + 0.5 * k.kappa * root * root
        if phi < best_phi:
            best_x, best_phi = root, phi
    alpha_max = math.exp(best_phi)
    alpha = alpha_coeff(k)
    if alpha_max < alpha * (1.0 - 1e-12):
        raise RuntimeError(
            f"fatal inconsistency: measured maximal weight {alpha_max} "
            f"falls below the proven coefficient {alpha} at kappa={k.kappa}"
        )
    return OptimizationResult(
        argument=best_x,
        objective=alpha_max,
        gap=None,
        iterations=iters,
        converged=len(idx) > 0,
    )


def interval_kappa(x_lo: float, x_hi: float, n_grid: int = 512) -> OptimizationResult:
    """The single kappa minimizing the worst relative gap
    sup over [x_lo, x_hi] of (Q(x) - g(x, kappa))/Q(x).

    The inner sup runs over a log-spaced grid of at least 512 points; the
    outer minimization is a coarse scan plus golden-section refinement.
    """
    x_lo, x_hi = float(x_lo), float(x_hi)
    if not (math.isfinite(x_lo) and math.isfinite(x_hi)):
        raise DomainError("interval endpoints must be finite")
    if x_lo <= 0.0 or x_hi < x_lo:
        raise DomainError(f"need 0 < x_lo <= x_hi, got [{x_lo}, {x_hi}]")
    n_grid = max(int(n_grid), 512)
    xs = np.geomspace(x_lo, x_hi, n_grid)
    qs = q(xs)

    def worst_gap(kap: float) -> float:
        return float(np.max((qs - g_lower(xs, kap)) / qs))

    def objective(kap: float) -> float:
        return -worst_gap(kap)

    arg, neg_val, iters, at_edge = _coarse_then_golden(
        objective, 1.0 + 1e-9, KAPPA_MAX, 400, 1e-8
    )
    return OptimizationResult(
        argument=arg,
        objective=-neg_val,
        gap=-neg_val,
        iterations=iters,
        converged=not at_edge,
    )
