"""Quadrature engine: adaptive Gauss-Kronrod on finite intervals, a
semi-infinite rule for decaying integrands, and improper oscillatory
integrals of Bessel type summed arch-by-arch between consecutive zeros.

The finite rule is the embedded (G7, K15) pair with QUADPACK's error
estimate and worst-interval-first bisection.  Endpoints are never
evaluated, so integrable endpoint singularities of type r^c, c > -1 are
handled by refinement alone.

Oscillatory integrals over [0, inf) are partitioned at the zeros of the
Bessel factor.  Two regimes:

* signed integrands whose arch integrals alternate: Wynn's epsilon
  algorithm on the partial sums (rapid for alternating sequences);
* nonnegative integrands with an algebraic envelope ~ r^(-gamma): the
  partial sums converge like X^(1-gamma), far too slowly to sum near the
  admissibility boundary (gamma can sit just above 1), and epsilon-type
  acceleration provably stalls on such logarithmic sequences.  Instead the
  known envelope exponent is exploited directly: the remainder past X has
  an expansion X^(1-gamma) (c0 + c1/X + c2/X^2 + ...), and a small least
  squares fit over trailing partial sums extrapolates to the limit with
  residual O(X^(1-gamma-m)).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConvergenceError, DivergenceError, DomainError
from .special_fns import BesselOrder, bessel_j, bessel_j_zero

__all__ = [
    "QuadResult",
    "OscillatoryIntegrand",
    "integrate_finite",
    "integrate_semi_infinite_decaying",
    "integrate_oscillatory_bessel",
    "wynn_epsilon",
    "DEFAULT_REL_TOL",
    "ABS_FLOOR",
]

DEFAULT_REL_TOL = 1e-9
ABS_FLOOR = 1e-14

# (G7, K15) nodes and weights, QUADPACK dqk15.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


@dataclass
class QuadResult:
    """Numeric value with an error estimate and the evaluation count."""

    value: float
    error_estimate: float
    evaluations: int
    converged: bool

    def expect_converged(self, context: str) -> "QuadResult":
        if not self.converged:
            raise ConvergenceError(
                f"{context}: quadrature did not converge "
                f"(value={self.value!r}, error_estimate={self.error_estimate!r})"
            )
        return self


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    resg = fc * _WG[3]
    resk = fc * _WGK[7]
    resabs = abs(fc) * _WGK[7]
    pairs = []
    for j in range(7):
        dx = h * _XGK[j]
        f1 = f(c - dx)
        f2 = f(c + dx)
        pairs.append((f1, f2))
        fsum = f1 + f2
        if j % 2 == 1:
            resg += _WG[j // 2] * fsum
        resk += _WGK[j] * fsum
        resabs += _WGK[j] * (abs(f1) + abs(f2))
    mean = 0.5 * resk
    resasc = _WGK[7] * abs(fc - mean)
    for j in range(7):
        resasc += _WGK[j] * (abs(pairs[j][0] - mean) + abs(pairs[j][1] - mean))
    resk *= h
    resg *= h
    resabs *= abs(h)
    resasc *= abs(h)
    err = abs(resk - resg)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    # Round-off floor, as in QUADPACK.
    eps50 = 50.0 * 2.220446049250313e-16
    if resabs > 1e-290:
        err = max(err, eps50 * resabs)
    return resk, err


def integrate_finite(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_REL_TOL,
    abs_tol: float = ABS_FLOOR,
    max_intervals: int = 4000,
) -> QuadResult:
    """Adaptive Gauss-Kronrod integral of f over [a, b].

    Converged when the summed error estimate drops below
    ``max(tol * |value|, abs_tol)``.  Non-convergence is reported in the
    result, never raised.
    """
    if not (a < b):
        raise DomainError(f"integrate_finite requires a < b, got [{a!r}, {b!r}]")
    if tol <= 0.0:
        raise DomainError("tolerance must be positive")
    v, e = _gk15(f, a, b)
    evals = 15
    heap = [(-e, a, b, v, e)]
    total_v, total_e = v, e
    while total_e > max(tol * abs(total_v), abs_tol) and len(heap) < max_intervals:
        neg_e, aa, bb, vv, ee = heapq.heappop(heap)
        mid = 0.5 * (aa + bb)
        if mid <= aa or mid >= bb:
            # Interval at machine resolution; cannot be refined.
            heapq.heappush(heap, (neg_e, aa, bb, vv, ee))
            break
        v1, e1 = _gk15(f, aa, mid)
        v2, e2 = _gk15(f, mid, bb)
        evals += 30
        total_v += v1 + v2 - vv
        total_e += e1 + e2 - ee
        heapq.heappush(heap, (-e1, aa, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, bb, v2, e2))
    total_v = math.fsum(item[3] for item in heap)
    total_e = math.fsum(item[4] for item in heap)
    converged = total_e <= max(tol * abs(total_v), abs_tol)
    return QuadResult(total_v, total_e, evals, converged)


def _decays_fast_enough(f: Callable[[float], float]) -> bool:
    # Cheap necessary check that r^(1+delta) f(r) -> 0 along a sparse grid;
    # catches the plainly divergent inputs before any work is done.
    probes = (1e3, 1e6, 1e9)
    values = []
    for r in probes:
        try:
            values.append(abs(f(r)) * r**1.001)
        except OverflowError:
            return False
    tiny = 1e-8
    if values[-1] <= tiny:
        return True
    return values[-1] < 0.25 * values[0]


def integrate_semi_infinite_decaying(
    f: Callable[[float], float],
    tol: float = DEFAULT_REL_TOL,
    abs_tol: float = ABS_FLOOR,
    max_intervals: int = 6000,
) -> QuadResult:
    """Integral of f over [0, inf) for eventually-decaying integrands.

    Uses the substitution r = t/(1-t), mapping to (0, 1); the adaptive
    finite rule then resolves both the bulk and the compressed tail.
    Raises ``DivergenceError`` when the integrand detectably fails the
    decay precondition.
    """
    if not _decays_fast_enough(f):
        raise DivergenceError(
            "integrand does not decay like r^(-1-delta); the integral over "
            "[0, inf) cannot converge absolutely"
        )

    def mapped(t: float) -> float:
        u = 1.0 - t
        r = t / u
        fr = f(r)
        if fr == 0.0:
            return 0.0
        return fr / (u * u)

    return integrate_finite(mapped, 0.0, 1.0, tol, abs_tol, max_intervals)


def wynn_epsilon(seq: Sequence[float]) -> tuple[float, float]:
    """Wynn's epsilon acceleration of a sequence of partial sums.

    Returns the best even-column estimate together with a stability
    estimate (the spread of the deepest even entries).  Suited to
    alternating/linearly converging sequences; not used for the
    logarithmically converging positive sums (see module docstring).
    """
    n = len(seq)
    if n == 0:
        raise DomainError("wynn_epsilon needs a nonempty sequence")
    if n == 1:
        return seq[0], float("inf")
    eps_prev2 = [0.0] * (n + 1)
    eps_prev = [float(s) for s in seq]
    best = eps_prev[-1]
    best_err = abs(eps_prev[-1] - eps_prev[-2])
    col = 0
    while len(eps_prev) > 1:
        col += 1
        cur = []
        degenerate = False
        for i in range(len(eps_prev) - 1):
            diff = eps_prev[i + 1] - eps_prev[i]
            if diff == 0.0:
                degenerate = True
                break
            cur.append(eps_prev2[i + 1] + 1.0 / diff)
        if degenerate:
            # An exact repeat means the sequence (or a transform of it)
            # already converged at that depth.
            return eps_prev[-1], 0.0
        if col % 2 == 0 and len(cur) >= 2:
            spread = abs(cur[-1] - cur[-2])
            if spread < best_err:
                best_err = spread
                best = cur[-1]
        eps_prev2 = eps_prev
        eps_prev = cur
    return best, best_err


@dataclass(frozen=True)
class OscillatoryIntegrand:
    """Specification of an integrand envelope(r) * |J_nu(r)|^power on [0, inf).

    ``tail_exponent`` is the algebraic decay rate gamma of the envelope of
    the full integrand, i.e. envelope(r) * r^(-power/2) ~ r^(-gamma); it
    drives both the integrability check and the tail extrapolation.
    ``zero_exponent`` is the growth exponent c of envelope(r) ~ r^c as
    r -> 0, needed for the local-integrability check.  With
    ``signed=True`` the integrand is envelope(r) * J_nu(r)^power (power
    must then be an integer so the sign is well defined) and only
    conditional convergence (gamma > 0) is required.
    """

    order: BesselOrder
    envelope: Callable[[float], float]
    power: float
    tail_exponent: float
    zero_exponent: float = 0.0
    signed: bool = False

    def __post_init__(self) -> None:
        if self.power < 1.0:
            raise DomainError(f"power must be >= 1, got {self.power!r}")
        if self.signed and self.power != round(self.power):
            raise DomainError("signed integrands need an integer power")

    def check_integrable(self) -> None:
        if self.zero_exponent + self.order.nu * self.power <= -1.0:
            raise DivergenceError(
                "integrand is not locally integrable at 0: envelope exponent "
                f"{self.zero_exponent!r} + nu*power = "
                f"{self.zero_exponent + self.order.nu * self.power!r} <= -1"
            )
        alternates = self.signed and int(round(self.power)) % 2 == 1
        required = 0.0 if alternates else 1.0
        if not self.tail_exponent > required:
            kind = "conditional" if alternates else "absolute"
            raise DivergenceError(
                f"{kind} convergence on [0, inf) requires tail exponent "
                f"> {required}, got {self.tail_exponent!r}"
            )


def power_envelope_integrand(
    order: BesselOrder, beta: float, power: float, signed: bool = False
) -> OscillatoryIntegrand:
    """The workhorse integrand r^beta |J_nu(r)|^power."""

    def envelope(r: float) -> float:
        return r**beta

    return OscillatoryIntegrand(
        order=order,
        envelope=envelope,
        power=power,
        tail_exponent=0.5 * power - beta,
        zero_exponent=beta,
        signed=signed,
    )


@lru_cache(maxsize=64)
def _zero_stream(nu: float):
    def zero(k: int) -> float:
        return bessel_j_zero(nu, k)

    return zero


def _algebraic_tail_fit(
    xs: Sequence[float], sums: Sequence[float], gamma_exp: float, n_terms: int
) -> tuple[float, float]:
    """Least-squares fit S_n = S_inf - X_n^(1-gamma) * poly(x_ref/X_n).

    Returns the extrapolated limit and the max fit residual.
    """
    x = np.asarray(xs, dtype=float)
    s = np.asarray(sums, dtype=float)
    t = x[-1] / x
    w = x ** (1.0 - gamma_exp)
    cols = [np.ones_like(x)]
    for j in range(n_terms):
        cols.append(-w * t**j)
    design = np.column_stack(cols)
    sol, *_ = np.linalg.lstsq(design, s, rcond=None)
    resid = float(np.max(np.abs(s - design @ sol)))
    return float(sol[0]), resid


def _estimate_tail_exponent(
    xs: Sequence[float], arch_values: Sequence[float]
) -> tuple[float, float]:
    """Estimate gamma (and its uncertainty) from trailing arch magnitudes.

    Fits log|a_k| = c - gamma log(x_k) + b / x_k over the trailing half;
    the 1/x term absorbs the leading bias of the plain log-log slope.
    """
    pairs = [
        (x, abs(v)) for x, v in zip(xs, arch_values) if v != 0.0
    ]
    window = max(len(pairs) // 2, 6)
    pairs = pairs[-window:]
    lx = np.log([x for x, _ in pairs])
    ly = np.log([v for _, v in pairs])
    inv = 1.0 / np.asarray([x for x, _ in pairs])
    design = np.column_stack([np.ones_like(lx), -lx, inv])
    sol, *_ = np.linalg.lstsq(design, ly, rcond=None)
    resid = ly - design @ sol
    rms = float(np.sqrt(np.mean(resid**2)))
    spread = float(lx.max() - lx.min())
    gamma_unc = 3.0 * rms / max(spread, 1e-6)
    return float(sol[1]), gamma_unc


def _sum_arches_positive(
    arch_integral: Callable[[int], tuple[float, float, int]],
    boundary: Callable[[int], float],
    gamma_exp: Optional[float],
    tol: float,
    max_arches: int,
    fit_terms: int = 4,
    min_arches: int = 24,
    check_every: int = 8,
) -> QuadResult:
    """Sum nonnegative arch integrals, extrapolating the algebraic tail.

    ``gamma_exp=None`` estimates the envelope exponent from the arch
    magnitudes at every checkpoint, widening the reported error by the
    extrapolation's sensitivity to that estimate.
    """
    partial: list[float] = []
    arch_values: list[float] = []
    xs: list[float] = []
    total = 0.0
    quad_err = 0.0
    evals = 0
    prev_est: Optional[float] = None
    best: Optional[tuple[float, float]] = None
    for k in range(max_arches):
        v, e, n = arch_integral(k)
        evals += n
        total += v
        quad_err += e
        xs.append(boundary(k + 1))
        arch_values.append(v)
        partial.append(total)
        if k + 1 >= min_arches and (k + 1) % check_every == 0:
            if gamma_exp is None:
                # Arch values scale like the integrand envelope x^(-gamma).
                g_hat, g_unc = _estimate_tail_exponent(xs, arch_values)
            else:
                g_hat, g_unc = gamma_exp, 0.0
            window = min(len(xs) // 2, 64)
            est, resid = _algebraic_tail_fit(
                xs[-window:], partial[-window:], g_hat, fit_terms
            )
            est_lo, _ = _algebraic_tail_fit(
                xs[-window:], partial[-window:], g_hat, fit_terms - 1
            )
            err = abs(est - est_lo) + resid + quad_err
            if g_unc > 0.0:
                est_hi, _ = _algebraic_tail_fit(
                    xs[-window:], partial[-window:], g_hat + g_unc, fit_terms
                )
                est_lo2, _ = _algebraic_tail_fit(
                    xs[-window:], partial[-window:], max(g_hat - g_unc, 1.01),
                    fit_terms,
                )
                err += abs(est_hi - est_lo2)
            if prev_est is not None:
                err = max(err, 0.5 * abs(est - prev_est) + quad_err)
            prev_est = est
            if best is None or err < best[1]:
                best = (est, err)
            if err <= tol * max(abs(est), 1e-300):
                return QuadResult(est, err, evals, True)
    if best is None:
        return QuadResult(total, quad_err + abs(total), evals, False)
    return QuadResult(best[0], best[1], evals, False)


def _sum_arches_alternating(
    arch_integral: Callable[[int], tuple[float, float, int]],
    tol: float,
    max_arches: int,
    min_arches: int = 14,
    check_every: int = 4,
) -> QuadResult:
    """Sum signed arch integrals, accelerating with Wynn's epsilon algorithm."""
    partial: list[float] = []
    total = 0.0
    quad_err = 0.0
    evals = 0
    best: Optional[tuple[float, float]] = None
    for k in range(max_arches):
        v, e, n = arch_integral(k)
        evals += n
        total += v
        quad_err += e
        partial.append(total)
        if k + 1 >= min_arches and (k + 1) % check_every == 0:
            est, spread = wynn_epsilon(partial[-60:])
            err = spread + quad_err
            if best is None or err < best[1]:
                best = (est, err)
            if err <= tol * max(abs(est), 1e-300):
                return QuadResult(est, err, evals, True)
    if best is None:
        return QuadResult(total, quad_err + abs(total), evals, False)
    return QuadResult(best[0], best[1], evals, False)


def integrate_oscillatory_bessel(
    spec: OscillatoryIntegrand,
    tol: float = DEFAULT_REL_TOL,
    max_arches: int = 800,
) -> QuadResult:
    """Integral of the Bessel-type integrand described by ``spec`` over [0, inf).

    The axis is partitioned at the zeros of J_nu; each arch is integrated
    with the adaptive finite rule, and the partial-sum sequence is pushed
    to its limit by the regime-appropriate accelerator.
    """
    spec.check_integrable()
    nu = spec.order.nu
    zero = _zero_stream(nu)
    power = spec.power
    envelope = spec.envelope
    signed = spec.signed
    int_power = int(round(power))

    def integrand(r: float) -> float:
        if r <= 0.0:
            return 0.0
        j = bessel_j(nu, r)
        if signed:
            return envelope(r) * j**int_power
        aj = abs(j)
        if aj == 0.0:
            return 0.0
        if r < 1e-3:
            # Avoid overflow of a negative-power envelope against a
            # vanishing Bessel factor; combine in log space.
            env = envelope(r)
            if env == 0.0:
                return 0.0
            return math.copysign(
                math.exp(math.log(abs(env)) + power * math.log(aj)), env
            )
        return envelope(r) * aj**power

    arch_tol = min(1e-12, tol * 1e-2)

    def arch_integral(k: int) -> tuple[float, float, int]:
        a = 0.0 if k == 0 else zero(k)
        b = zero(k + 1)
        res = integrate_finite(integrand, a, b, arch_tol, 1e-16)
        return res.value, res.error_estimate, res.evaluations

    def boundary(k: int) -> float:
        return zero(k)

    if signed and int_power % 2 == 1:
        return _sum_arches_alternating(arch_integral, tol, min(max_arches, 200))
    return _sum_arches_positive(
        arch_integral, boundary, spec.tail_exponent, tol, max_arches
    )


def sum_over_partition(
    f: Callable[[float], float],
    boundary: Callable[[int], float],
    tol: float = DEFAULT_REL_TOL,
    tail_exponent: Optional[float] = None,
    alternating: Optional[bool] = None,
    max_cells: int = 800,
) -> QuadResult:
    """Improper integral of f over [0, inf) split at a caller-supplied partition.

    ``boundary(k)`` must give the k-th partition point for k >= 1, strictly
    increasing and unbounded.  ``alternating=None`` auto-detects from the
    signs of the first few cell integrals.  Positive-cell sums need
    ``tail_exponent`` (the algebraic decay rate of the cell envelope); it
    is estimated from the observed decay when not supplied, at the cost of
    a larger reported error.
    """
    arch_tol = min(1e-12, tol * 1e-2)

    def cell_integral(k: int) -> tuple[float, float, int]:
        a = 0.0 if k == 0 else boundary(k)
        b = boundary(k + 1)
        res = integrate_finite(f, a, b, arch_tol, 1e-16)
        return res.value, res.error_estimate, res.evaluations

    probe_vals = []
    probe_errs = []
    probe_evals = 0
    n_probe = 10
    for k in range(n_probe):
        v, e, n = cell_integral(k)
        probe_vals.append(v)
        probe_errs.append(e)
        probe_evals += n

    if alternating is None:
        tail_signs = [math.copysign(1.0, v) for v in probe_vals[2:] if v != 0.0]
        alternating = len(tail_signs) >= 4 and all(
            tail_signs[i] != tail_signs[i + 1] for i in range(len(tail_signs) - 1)
        )

    cache = dict(enumerate(zip(probe_vals, probe_errs)))

    def cached_cell(k: int) -> tuple[float, float, int]:
        if k in cache:
            v, e = cache.pop(k)
            return v, e, 0
        return cell_integral(k)

    if alternating:
        result = _sum_arches_alternating(cached_cell, tol, min(max_cells, 200))
        return QuadResult(
            result.value, result.error_estimate, result.evaluations + probe_evals,
            result.converged,
        )

    result = _sum_arches_positive(
        cached_cell, boundary, tail_exponent, tol, max_cells
    )
    return QuadResult(
        result.value, result.error_estimate, result.evaluations + probe_evals,
        result.converged,
    )
