"""Property-suite engine: certifies the bound inequality, the critical-point
sign structure, the Mills-ratio relation, the derivative identity, and the
Chernoff upper bound on configurable grids, emitting structured reports.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import (
    KappaParam,
    as_kappa,
    boyd_lower,
    chernoff_upper,
    critical_points,
    df_dx_identity,
    f_diff,
    g_lower,
    lemma1_relation,
    mills_ratio,
    x1_point,
)
from .errors import DomainError, UsageError
from .special import q

#: Default kappa sweep: trivial, near-degenerate, moderate, and asymptotic.
DEFAULT_KAPPAS = (1.0, 1.001, 1.01, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0)

#: Default tolerances: relative for inequalities, absolute for endpoint
#: equalities, and the finite-difference matching tolerance.
REL_TOL = 1e-13
ENDPOINT_TOL = 1e-10
FD_TOL = 1e-6

#: kappa - 1 below this uses a multiplicative grid around 1/sqrt(kappa-1);
#: fixed global grids miss the interval [x1, x2] entirely in that regime.
DEGENERATE_EPS = 1e-9


@dataclass(frozen=True)
class EvaluationGrid:
    """A rectangular sweep over x and kappa."""

    x_min: float = -10.0
    x_max: float = 10.0
    x_count: int = 2001
    spacing: str = "linear"
    kappas: tuple = DEFAULT_KAPPAS

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise UsageError("grid endpoints must be finite")
        if self.x_min >= self.x_max:
            raise UsageError(f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if self.x_count < 2:
            raise UsageError("x_count must be >= 2")
        if self.spacing not in ("linear", "log"):
            raise UsageError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if self.spacing == "log" and self.x_min <= 0.0:
            raise UsageError("log spacing requires x_min > 0")
        object.__setattr__(self, "kappas", tuple(as_kappa(k) for k in self.kappas))

    def xs(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.x_min, self.x_max, self.x_count)
        return np.linspace(self.x_min, self.x_max, self.x_count)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one property suite.

    worst_violation is signed: negative values are margin, positive values
    are violations; passed iff worst_violation <= tolerance.  The worst
    point is reported with both sides of the inequality for diagnosability.
    """

    suite: str
    points_checked: int
    worst_violation: float
    worst_point: tuple
    tolerance: float
    passed: bool
    worst_lhs: float = math.nan
    worst_rhs: float = math.nan

    @classmethod
    def build(cls, suite, points, violations, xs, kappa, tol, lhs, rhs):
        i = int(np.argmax(violations))
        return cls(
            suite=suite,
            points_checked=int(points),
            worst_violation=float(violations[i]),
            worst_point=(float(xs[i]), float(kappa)),
            tolerance=tol,
            passed=bool(violations[i] <= tol),
            worst_lhs=float(lhs[i]),
            worst_rhs=float(rhs[i]),
        )


def _worse(a: VerificationReport | None, b: VerificationReport) -> VerificationReport:
    if a is None or b.worst_violation > a.worst_violation:
        return b
    return a


def _degenerate_xs(k: KappaParam, count: int) -> np.ndarray:
    pivot = 1.0 / math.sqrt(k.kappa_minus_1)
    return pivot * np.geomspace(1e-3, 1e3, count)


def verify_theorem(
    grid: EvaluationGrid | None = None,
    tolerance: float = REL_TOL,
    weight_inflation: float = 1.0,
) -> VerificationReport:
    """Check g(x, kappa) <= Q(x) * (1 + tolerance) over the whole grid.

    weight_inflation is a test hook that multiplies the bound's weight; the
    suite must detect a corrupted bound, not merely avoid crashing.
    """
    grid = grid or EvaluationGrid()
    worst = None
    points = 0
    for k in grid.kappas:
        xs = grid.xs()
        if 0.0 < k.kappa_minus_1 <= DEGENERATE_EPS:
            xs = _degenerate_xs(k, grid.x_count)
        qs = q(xs)
        gs = weight_inflation * g_lower(xs, k)
        # deep-tail points where Q underflows to 0: the bound must have
        # underflowed too (g <= Q); count them as full margin, not 0/0
        safe = np.where(qs > 0.0, qs, 1.0)
        viol = np.where(
            qs > 0.0, (gs - qs) / safe, np.where(gs > 0.0, math.inf, -1.0)
        )
        points += xs.size
        worst = _worse(
            worst,
            VerificationReport.build(
                "theorem", points, viol, xs, k.kappa, tolerance, gs, qs
            ),
        )
    return VerificationReport(
        suite="theorem",
        points_checked=points,
        worst_violation=worst.worst_violation,
        worst_point=worst.worst_point,
        tolerance=tolerance,
        passed=worst.worst_violation <= tolerance,
        worst_lhs=worst.worst_lhs,
        worst_rhs=worst.worst_rhs,
    )


def verify_lemma1(
    k, points_per_region: int = 400, tolerance: float = ENDPOINT_TOL
) -> VerificationReport:
    """Check the sign pattern of kappa*x*r(x) - 1 on the three regions split
    by the critical points, the endpoint equalities, and the ordering
    x1 < 1/sqrt(kappa-1) < x2."""
    k = as_kappa(k)
    if k.kappa <= 1.0:
        raise DomainError("verify_lemma1 requires kappa > 1")
    n = int(points_per_region)
    if n < 2:
        raise UsageError("points_per_region must be >= 2")
    cp = critical_points(k)

    if not (cp.x1 < cp.pivot < cp.x2):
        return VerificationReport(
            suite="lemma1",
            points_checked=0,
            worst_violation=math.inf,
            worst_point=(cp.pivot, k.kappa),
            tolerance=tolerance,
            passed=False,
        )

    # Region interiors; endpoints are tested separately for equality.
    inner = np.linspace(cp.x1, cp.x2, n + 2)[1:-1]
    regions = [
        # expected sign: negative below x1, nonnegative inside, negative above
        ("below", np.linspace(0.0, cp.x1, n, endpoint=False), +1.0),
        ("inside", inner, -1.0),
        ("above", np.geomspace(cp.x2, 10.0 * cp.x2, n + 1)[1:], +1.0),
    ]
    worst = None
    points = 0
    for _, xs, orient in regions:
        rel = lemma1_relation(xs, k)
        viol = orient * rel  # positive where the expected sign is violated
        points += xs.size
        worst = _worse(
            worst,
            VerificationReport.build(
                "lemma1", points, viol, xs, k.kappa, tolerance, rel, np.zeros_like(rel)
            ),
        )
    for x_end in (cp.x1, cp.x2):
        resid = abs(lemma1_relation(x_end, k))
        worst = _worse(
            worst,
            VerificationReport.build(
                "lemma1",
                points + 1,
                np.array([resid]),
                np.array([x_end]),
                k.kappa,
                tolerance,
                np.array([resid]),
                np.array([0.0]),
            ),
        )
        points += 1
    return VerificationReport(
        suite="lemma1",
        points_checked=points,
        worst_violation=worst.worst_violation,
        worst_point=worst.worst_point,
        tolerance=tolerance,
        passed=worst.worst_violation <= tolerance,
        worst_lhs=worst.worst_lhs,
        worst_rhs=worst.worst_rhs,
    )


def verify_lemma2(
    k, x_hi: float = 1000.0, count: int = 10000, tolerance: float = 1e-12
) -> VerificationReport:
    """Check kappa*x*R(x) >= 1 on [x1, x_hi], plus the sufficient condition
    pi*kappa*x / ((pi-1)*x + sqrt(x**2 + 2*pi)) >= 1 on the same range."""
    k = as_kappa(k)
    if k.kappa <= 1.0:
        raise DomainError("verify_lemma2 requires kappa > 1")
    x1 = x1_point(k)
    if not x_hi > x1:
        raise UsageError(f"x_hi must exceed x1 = {x1}")
    xs = np.geomspace(x1, x_hi, int(count))
    lhs_mills = k.kappa * xs * mills_ratio(xs)
    lhs_boyd = k.kappa * xs * boyd_lower(xs)
    viol = np.maximum(1.0 - lhs_mills, 1.0 - lhs_boyd)
    lhs = np.minimum(lhs_mills, lhs_boyd)
    return VerificationReport.build(
        "lemma2", xs.size, viol, xs, k.kappa, tolerance, lhs, np.ones_like(lhs)
    )


def verify_derivative(
    grid: EvaluationGrid | None = None,
    h_step: float = 1e-5,
    tolerance: float = FD_TOL,
) -> VerificationReport:
    """Check the closed form of df/dx against central finite differences."""
    grid = grid or EvaluationGrid()
    if not (1e-7 <= h_step <= 1e-3):
        raise UsageError("h_step must lie in [1e-7, 1e-3]")
    for k in grid.kappas:
        if k.kappa <= 1.0:
            raise UsageError("verify_derivative requires kappa entries > 1")
    worst = None
    points = 0
    for k in grid.kappas:
        xs = grid.xs()
        if 0.0 < k.kappa_minus_1 <= DEGENERATE_EPS:
            xs = _degenerate_xs(k, grid.x_count)
        xs = xs[xs >= h_step]  # f is defined for x >= 0 only
        if xs.size == 0:
            continue
        ident = df_dx_identity(xs, k)
        fd = (f_diff(xs + h_step, k) - f_diff(xs - h_step, k)) / (2.0 * h_step)
        err = np.abs(ident - fd) / np.maximum(1.0, np.abs(ident))
        points += xs.size
        worst = _worse(
            worst,
            VerificationReport.build(
                "derivative", points, err, xs, k.kappa, tolerance, ident, fd
            ),
        )
    return VerificationReport(
        suite="derivative",
        points_checked=points,
        worst_violation=worst.worst_violation,
        worst_point=worst.worst_point,
        tolerance=tolerance,
        passed=worst.worst_violation <= tolerance,
        worst_lhs=worst.worst_lhs,
        worst_rhs=worst.worst_rhs,
    )


def verify_chernoff(
    grid: EvaluationGrid | None = None, tolerance: float = REL_TOL
) -> VerificationReport:
    """Check Q(x) <= 0.5*exp(-x**2/2)*(1 + tolerance) on the grid (x >= 0)."""
    grid = grid or EvaluationGrid(x_min=0.0, x_max=10.0, x_count=10001)
    if grid.x_min < 0.0:
        raise UsageError("the Chernoff upper bound requires x >= 0")
    xs = grid.xs()
    qs = q(xs)
    ch = chernoff_upper(xs)
    viol = (qs - ch) / ch
    return VerificationReport.build(
        "chernoff", xs.size, viol, xs, math.nan, tolerance, qs, ch
    )


def run_all(
    grid: EvaluationGrid | None = None, weight_inflation: float = 1.0
) -> list[VerificationReport]:
    """Run every suite with its defaults; lemma suites run per kappa > 1."""
    grid = grid or EvaluationGrid()
    reports = [verify_theorem(grid, weight_inflation=weight_inflation)]
    strict = [k for k in grid.kappas if k.kappa > 1.0]
    for k in strict:
        reports.append(verify_lemma1(k))
        reports.append(verify_lemma2(k, count=2000))
    if strict:
        dgrid = EvaluationGrid(
            grid.x_min, grid.x_max, grid.x_count, grid.spacing, tuple(strict)
        )
        reports.append(verify_derivative(dgrid))
    reports.append(verify_chernoff())
    return reports
