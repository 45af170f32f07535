"""Rate optimizer for two-stage transmission with one feedback use.

The sender spends a fraction alpha of the block on a first stage; after
seeing what survived, both sides agree on a short candidate list and the
remaining 1 - alpha fraction disambiguates it.  A triple (omega, alpha, R)
supports error fraction tau when every split of the adversary's budget is
covered: stage-1 damage x either leaves a list of some size L (handled by
a size-L+1-grade second stage, whose guaranteed fraction is tau_of_L) or
overflows the list cap and must be handled by the shortened-code rate
bound.  ``two_stage_rate`` grid-searches the triple maximizing alpha * R
subject to that feasibility check.

The degenerate point where the achievable rate hits zero is computed
exactly from the stationarity cubic 1 + 3 omega^2 - 8 omega^3 = 0, and
``verify_remains`` certifies the per-L inequalities behind it with
rational interval arithmetic, so no float rounding is trusted anywhere
near the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt

from .rate_bounds import binary_entropy, tau_star
from .tau_lp import TAU_TABLE, tau_of_L


@dataclass(frozen=True)
class TwoStageConfig:
    """Grids and tolerances for the feasibility search.

    The omega and alpha extras pin down the neighborhood of the zero-rate
    point, which a uniform grid of this size would straddle; rates come
    from a fixed ladder because alpha * R is maximized at either tiny or
    moderate R, never at finely tuned interior values.
    """

    l_up: int = 17
    omega_points: int = 48
    alpha_points: int = 48
    rate_ladder: tuple[float, ...] = (
        1e-6, 1e-5, 1e-4, 1e-3, 0.003, 0.01, 0.03, 0.05,
        0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9,
    )
    omega_extras: tuple[float, ...] = (0.65, 0.6610498029, 0.67)
    alpha_extras: tuple[float, ...] = (0.4639337308, 0.995, 0.999)
    x_points: int = 140
    boundary_tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.l_up < 1:
            raise ValueError("list cap must be at least 1")
        if self.x_points < 8 or self.omega_points < 2 or self.alpha_points < 2:
            raise ValueError("grids too coarse to mean anything")


DEFAULT_CONFIG = TwoStageConfig()


def r2(alpha: float, tau1: float, omega: float, R1: float) -> float:
    """Rate still extractable from the second stage after stage-1 damage
    tau1, per the shortened-code argument.

    Zero whenever the expression degenerates (negative square-root
    argument or negative bracket): those regimes leave at most polynomial
    list growth, which costs no rate.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"stage split {alpha} outside (0, 1)")
    if not 0.0 <= tau1 <= omega:
        raise ValueError(f"stage-1 fraction {tau1} outside [0, {omega}]")
    if R1 < 0.0:
        raise ValueError("stage-1 rate must be nonnegative")
    if tau1 == 0.0:
        return 0.0
    shrink = 1.0 - omega + tau1
    sqrt_arg = 1.0 - 4.0 * tau_star(R1, 1, omega) / (1.0 + omega - tau1)
    if sqrt_arg < 0.0:
        return 0.0
    bracket = binary_entropy(tau1 / shrink) - binary_entropy((1.0 - sqrt(sqrt_arg)) / 2.0)
    if bracket <= 0.0:
        return 0.0
    return alpha * shrink / (1.0 - alpha) * bracket


def _thresholds(R: float, omega: float, l_up: int) -> list[float]:
    """tau_star(R, L, omega) for L = 1..l_up (non-decreasing in L)."""
    return [tau_star(R, L, omega) for L in range(1, l_up + 1)]


def _x_grid(xmax: float, thresholds: list[float], nx: int, tol: float) -> list[float]:
    xs = [xmax * k / (nx + 1) for k in range(1, nx + 1)]
    just_inside = xmax * (1.0 - 1e-9)
    for thr in thresholds:
        if 0.0 < thr < xmax:
            # sit right past the threshold so the next list grade is probed
            xs.append(min(thr + 1e-12, just_inside))
    top = thresholds[-1]
    if top < xmax:
        span = xmax - top
        for frac in (1e-9, 0.25, 0.5, 0.75):
            xs.append(min(top + frac * span, just_inside))
    xs.append(xmax * (1.0 - 1e-6))
    return xs


def check_star(
    omega: float,
    alpha: float,
    R: float,
    tau: float,
    cfg: TwoStageConfig = DEFAULT_CONFIG,
    *,
    thresholds: list[float] | None = None,
) -> bool:
    """Whether (omega, alpha, R) survives every stage-1 damage level x.

    For each probed x below min(omega, tau/alpha): locate the smallest
    list grade L whose threshold covers x.  L=1 imposes nothing (a single
    candidate needs no second stage).  2 <= L <= the cap imposes
    (tau - alpha x)/(1 - alpha) <= tau_of_L(L); beyond the cap the
    shortened-code rate takes over.  Comparisons are conservative by
    ``cfg.boundary_tol``: anything within tolerance of failing fails.
    """
    if not 0.0 < omega < 1.0 or not 0.0 < alpha < 1.0 or R < 0.0:
        raise ValueError("need omega, alpha in (0, 1) and R >= 0")
    if tau <= 0.0:
        return True
    if thresholds is None:
        thresholds = _thresholds(R, omega, cfg.l_up)
    tol = cfg.boundary_tol
    xmax = min(omega, tau / alpha)
    one_minus = 1.0 - alpha
    for x in _x_grid(xmax, thresholds, cfg.x_points, tol):
        lhs = (tau - alpha * x) / one_minus
        grade = None
        for L, thr in enumerate(thresholds, start=1):
            if x <= thr - tol:
                grade = L
                break
        if grade == 1:
            continue
        if grade is not None:
            bound = float(tau_of_L(grade))
        else:
            bound = tau_star(r2(alpha, x, omega, R), 1, 0.5)
        if lhs > bound - tol:
            return False
    return True


def two_stage_rate(tau: float, cfg: TwoStageConfig = DEFAULT_CONFIG) -> float:
    """Best alpha * R over the grid subject to check_star; 0 if nothing
    passes.  Deterministic: candidates are ranked by value with ties
    toward smaller omega, then alpha, then R, and the first feasible one
    wins."""
    if not 0.0 <= tau < 1.0:
        raise ValueError(f"error fraction {tau} outside [0, 1)")
    if tau == 0.0:
        # noiseless: feasibility is vacuous, take the best grid value
        tau = -1.0  # sentinel: every candidate passes
    n_om, n_al = cfg.omega_points, cfg.alpha_points
    omegas = sorted(
        {k / (n_om + 1) for k in range(1, n_om + 1)}
        | {w for w in cfg.omega_extras if 0.0 < w < 1.0}
    )
    alphas = sorted(
        {k / (n_al + 1) for k in range(1, n_al + 1)}
        | {a for a in cfg.alpha_extras if 0.0 < a < 1.0}
    )
    candidates = []
    for om in omegas:
        hcap = binary_entropy(om)
        for al in alphas:
            for R in cfg.rate_ladder:
                if R < hcap:
                    candidates.append((-al * R, om, al, R))
    candidates.sort()
    cache: dict[tuple[float, float], list[float]] = {}
    for neg_value, om, al, R in candidates:
        if tau < 0.0:
            return -neg_value
        key = (om, R)
        thresholds = cache.get(key)
        if thresholds is None:
            thresholds = _thresholds(R, om, cfg.l_up)
            cache[key] = thresholds
        if check_star(om, al, R, tau, cfg, thresholds=thresholds):
            return -neg_value
    return 0.0


@dataclass(frozen=True)
class PlotkinPoint:
    """The zero-rate threshold and the (omega, alpha) achieving it."""

    omega_max: float
    alpha_max: float
    tau_max: float

    def to_json_dict(self) -> dict[str, str]:
        return {
            "omega_max": f"{self.omega_max:.12f}",
            "alpha_max": f"{self.alpha_max:.12f}",
            "tau_max": f"{self.tau_max:.12f}",
        }


def plotkin_point() -> PlotkinPoint:
    """Solve the stationarity cubic 1 + 3 w^2 - 8 w^3 = 0 by bisection to
    1e-12 and derive the split and threshold from the root."""

    def p(w: float) -> float:
        return 1.0 + 3.0 * w * w - 8.0 * w**3

    lo, hi = 0.6, 0.7
    assert p(lo) > 0.0 > p(hi)
    while hi - lo > 1e-12:
        mid = (lo + hi) / 2.0
        if p(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    w = (lo + hi) / 2.0
    alpha = 1.0 / (1.0 + 4.0 * w**3)
    tau = (w + w**3) / (1.0 + 4.0 * w**3)
    return PlotkinPoint(w, alpha, tau)


@dataclass(frozen=True)
class RemainsRow:
    L: int
    lhs: Fraction
    rhs_low: Fraction
    rhs_high: Fraction
    ok: bool
    equality: bool


@dataclass
class RemainsReport:
    rows: list[RemainsRow]
    omega_low: Fraction
    omega_high: Fraction
    tail_ok: bool
    tail_range: tuple[int, int]

    @property
    def all_ok(self) -> bool:
        return self.tail_ok and all(r.ok for r in self.rows)

    def __bool__(self) -> bool:
        return self.all_ok


def _omega_enclosure(steps: int = 60) -> tuple[Fraction, Fraction]:
    """Shrinking rational bracket around the cubic's root; the sign of
    8 w^3 - 3 w^2 - 1 is evaluated exactly at every endpoint."""

    def q(w: Fraction) -> Fraction:
        return 8 * w**3 - 3 * w**2 - 1

    lo, hi = Fraction(33, 50), Fraction(67, 100)
    assert q(lo) < 0 < q(hi)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if q(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def verify_remains(l_up: int = 17) -> RemainsReport:
    """Certify tau(L+1) >= 1/4 + omega_root^(L-2)/4 for L = 1..l_up in
    exact arithmetic, bracketing the cubic root in rationals.

    The L=2 case is an exact equality (the exponent vanishes, killing the
    dependence on the root); every other case must clear the upper end of
    the interval.  Also certifies the tail inequality 1/(2L+1) >=
    (2/3)^(L-2) for L in 10..200, which is what retires list sizes beyond
    the table.
    """
    if not 1 <= l_up <= 17:
        raise ValueError("exact certification only covers caps 1..17")
    lo, hi = _omega_enclosure()
    quarter = Fraction(1, 4)
    rows: list[RemainsRow] = []
    for L in range(1, l_up + 1):
        lhs = TAU_TABLE[L + 1]
        e = L - 2
        if e == 0:
            power_lo = power_hi = Fraction(1)
        elif e > 0:
            power_lo, power_hi = lo**e, hi**e
        else:
            # 0 < lo < hi, so reciprocals swap the ends
            power_lo, power_hi = 1 / hi, 1 / lo
        rhs_low = quarter + power_lo / 4
        rhs_high = quarter + power_hi / 4
        equality = e == 0 and lhs == rhs_low
        ok = equality or lhs >= rhs_high
        rows.append(RemainsRow(L, lhs, rhs_low, rhs_high, ok, equality))
    two_thirds = Fraction(2, 3)
    tail_lo, tail_hi = 10, 200
    tail_ok = all(
        Fraction(1, 2 * L + 1) >= two_thirds ** (L - 2)
        for L in range(tail_lo, tail_hi + 1)
    )
    return RemainsReport(rows, lo, hi, tail_ok, (tail_lo, tail_hi))
