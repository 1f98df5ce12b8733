"""Independent oracles and randomized harnesses.

``oracle_integrate`` re-computes integrals through a deliberately
different pipeline from the production quadrature: fixed-order
Gauss-Legendre panels under uniform dyadic refinement (no error-driven
bisection, no Kronrod pair), a hundredfold tighter tolerance, and for
oscillatory integrands a partition shifted to the Bessel extrema (the
midpoints between consecutive zeros) with a deeper tail extrapolation.
The numeric modules never import this one; that direction of independence
is the point (see the review checklist in the README).

``run_dominance_suite`` drives seeded random radial profiles through the
restriction ratio and checks empirically that the sharp radial constant
dominates the radial class.  Reports are deterministic functions of the
seed and tolerances, byte-for-byte.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError
from .quadrature import (
    DEFAULT_REL_TOL,
    OscillatoryIntegrand,
    QuadResult,
    wynn_epsilon,
)
from .radial_fourier import CompactSupport, GaussianDecay, RadialProfile
from .restriction import RestrictionParams, ratio_z, sharp_radial_constant
from .special_fns import bessel_j, bessel_j_zero

__all__ = [
    "RandomRadialSpec",
    "generate_profiles",
    "oracle_integrate",
    "run_dominance_suite",
    "DominanceReport",
]

FAMILIES = ("gaussian_mixture", "polynomial_times_gaussian", "compact_bump")


@dataclass(frozen=True)
class RandomRadialSpec:
    """Seeded description of a random radial profile family.

    The same seed and spec always produce bit-identical parameter
    streams.  Every family is built so all L_p norms (p >= 1) are finite.
    """

    seed: int
    family: str
    count: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise DomainError(
                f"unknown family {self.family!r}; expected one of {FAMILIES}"
            )
        if self.count < 0:
            raise DomainError("count must be >= 0")


def _mixture_profile(weights, sigmas, label: str) -> RadialProfile:
    pairs = [(w, 0.5 / (s * s)) for w, s in zip(weights, sigmas)]

    def f(r: float) -> float:
        rr = r * r
        return math.fsum(w * math.exp(-rr * c) for w, c in pairs)

    return RadialProfile(f=f, decay=GaussianDecay(max(sigmas)), label=label)


def _poly_gaussian_profile(coeffs, sigma, label: str) -> RadialProfile:
    c = 0.5 / (sigma * sigma)

    def f(r: float) -> float:
        poly = 0.0
        for a in reversed(coeffs):
            poly = poly * r + a
        return poly * math.exp(-r * r * c)

    return RadialProfile(f=f, decay=GaussianDecay(sigma), label=label)


def _bump_profile(amplitude, radius, label: str) -> RadialProfile:
    # C-infinity bump exp(-1/(1-(r/R)^2)) scaled by the amplitude.
    inv_r = 1.0 / radius

    def f(r: float) -> float:
        u = r * inv_r
        if u >= 1.0:
            return 0.0
        return amplitude * math.exp(-1.0 / (1.0 - u * u))

    return RadialProfile(f=f, decay=CompactSupport(radius), label=label)


def generate_profiles(spec: RandomRadialSpec) -> list[RadialProfile]:
    """Deterministic list of ``spec.count`` profiles from one seeded stream.

    Parameters are embedded in each profile's label so any failure can be
    reproduced from the report alone.
    """
    rng = random.Random(spec.seed)
    profiles: list[RadialProfile] = []
    for i in range(spec.count):
        if spec.family == "gaussian_mixture":
            n = rng.randint(1, 4)
            sigmas = [rng.uniform(0.3, 3.0) for _ in range(n)]
            weights = [rng.uniform(-2.0, 2.0) for _ in range(n)]
            # Keep the profile safely nonzero.
            if max(abs(w) for w in weights) < 0.1:
                weights[0] += math.copysign(1.0, weights[0] or 1.0)
            label = (
                f"gaussian_mixture[seed={spec.seed},i={i}]"
                f" w={[round(w, 12) for w in weights]}"
                f" sigma={[round(s, 12) for s in sigmas]}"
            )
            profiles.append(_mixture_profile(weights, sigmas, label))
        elif spec.family == "polynomial_times_gaussian":
            degree = rng.randint(0, 6)
            coeffs = [rng.uniform(-1.5, 1.5) for _ in range(degree + 1)]
            if max(abs(c) for c in coeffs) < 0.1:
                coeffs[0] += math.copysign(1.0, coeffs[0] or 1.0)
            sigma = rng.uniform(0.4, 2.5)
            label = (
                f"polynomial_times_gaussian[seed={spec.seed},i={i}]"
                f" coeffs={[round(c, 12) for c in coeffs]} sigma={round(sigma, 12)}"
            )
            profiles.append(_poly_gaussian_profile(coeffs, sigma, label))
        else:
            radius = rng.uniform(0.5, 5.0)
            amplitude = rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 2.0)
            label = (
                f"compact_bump[seed={spec.seed},i={i}]"
                f" amplitude={round(amplitude, 12)} radius={round(radius, 12)}"
            )
            profiles.append(_bump_profile(amplitude, radius, label))
    return profiles


# --- oracle integrator ------------------------------------------------------

# 10-point Gauss-Legendre abscissae/weights on [-1, 1].
_GL_X = (
    0.148874338981631210884826001130,
    0.433395394129247190799265943166,
    0.679409568299024406234327365115,
    0.865063366688984510732096688423,
    0.973906528517171720077964012084,
)
_GL_W = (
    0.295524224714752870173892994651,
    0.269266719309996355091226921569,
    0.219086362515982043995534934228,
    0.149451349150580593145776339658,
    0.066671344308688137593568809893,
)


def _gl10(f: Callable[[float], float], a: float, b: float) -> float:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    acc = 0.0
    for x, w in zip(_GL_X, _GL_W):
        dx = h * x
        acc += w * (f(c - dx) + f(c + dx))
    return acc * h


def _oracle_finite(f, a, b, tol) -> QuadResult:
    # Uniform dyadic refinement with a golden-ratio initial split: shares
    # no subdivision logic with the adaptive production rule.
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    cuts = [a, a + (b - a) * (1.0 - phi), a + (b - a) * phi, b]
    panels = 1
    prev = None
    evals = 0
    for _ in range(18):
        total = 0.0
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            width = (hi - lo) / panels
            for i in range(panels):
                total += _gl10(f, lo + i * width, lo + (i + 1) * width)
                evals += 10
        if prev is not None:
            err = abs(total - prev)
            if err <= max(tol * abs(total), 1e-15):
                return QuadResult(total, err, evals, True)
        prev = total
        panels *= 2
    return QuadResult(prev, abs(prev), evals, False)


def _oracle_semi_infinite(f, tol) -> QuadResult:
    def mapped(t: float) -> float:
        u = 1.0 - t
        r = t / u
        fr = f(r)
        if fr == 0.0:
            return 0.0
        return fr / (u * u)

    return _oracle_finite(mapped, 0.0, 1.0, tol)


def _oracle_oscillatory(spec: OscillatoryIntegrand, tol) -> QuadResult:
    spec.check_integrable()
    nu = spec.order.nu
    power = spec.power
    int_power = int(round(power))
    signed = spec.signed

    def integrand(r: float) -> float:
        if r <= 0.0:
            return 0.0
        j = bessel_j(nu, r)
        if signed:
            return spec.envelope(r) * j**int_power
        aj = abs(j)
        if aj == 0.0:
            return 0.0
        if r < 1e-3:
            env = spec.envelope(r)
            if env == 0.0:
                return 0.0
            return math.copysign(
                math.exp(math.log(abs(env)) + power * math.log(aj)), env
            )
        return spec.envelope(r) * aj**power

    # Partition at the midpoints between consecutive zeros (the Bessel
    # extrema), shifted by half an arch relative to production.
    def boundary(k: int) -> float:
        return 0.5 * (bessel_j_zero(nu, k) + bessel_j_zero(nu, k + 1))

    alternating = signed and int_power % 2 == 1
    cells = 96 if not alternating else 48
    partial = []
    xs = []
    total = 0.0
    evals = 0
    for k in range(cells):
        a = 0.0 if k == 0 else boundary(k)
        b = boundary(k + 1)
        res = _oracle_finite(integrand, a, b, tol * 1e-2)
        evals += res.evaluations
        total += res.value
        xs.append(b)
        partial.append(total)
    if alternating:
        est, err = wynn_epsilon(partial)
        return QuadResult(est, err, evals, err <= tol * abs(est))
    # Deeper tail model than production (six correction terms).
    window = len(xs) // 2
    x = np.asarray(xs[-window:])
    s = np.asarray(partial[-window:])
    t = x[-1] / x
    w = x ** (1.0 - spec.tail_exponent)
    cols = [np.ones_like(x)] + [-w * t**j for j in range(6)]
    design = np.column_stack(cols)
    sol, *_ = np.linalg.lstsq(design, s, rcond=None)
    sol_lo, *_ = np.linalg.lstsq(design[:, :-1], s, rcond=None)
    est = float(sol[0])
    err = abs(est - float(sol_lo[0])) + float(np.max(np.abs(s - design @ sol)))
    return QuadResult(est, err, evals, err <= tol * abs(est))


def oracle_integrate(
    f: "Callable[[float], float] | OscillatoryIntegrand",
    domain: tuple[float, float],
    tol: float = DEFAULT_REL_TOL,
) -> QuadResult:
    """Ground-truth integral for tests: independent scheme, tolerance/100.

    ``f`` is either a plain integrand with a (possibly infinite) domain,
    or an :class:`OscillatoryIntegrand` (domain ignored, [0, inf)
    implied).
    """
    inner_tol = tol * 1e-2
    if isinstance(f, OscillatoryIntegrand):
        return _oracle_oscillatory(f, inner_tol)
    a, b = domain
    if math.isinf(b):
        if a != 0.0:
            raise DomainError("semi-infinite oracle domain must start at 0")
        return _oracle_semi_infinite(f, inner_tol)
    return _oracle_finite(f, a, b, inner_tol)


# --- dominance suite --------------------------------------------------------


@dataclass
class DominancePoint:
    d: int
    p: float
    q: float
    trials: int
    max_ratio: float
    k_rad: float
    margin: float
    argmax_label: str
    failures: list[dict] = field(default_factory=list)


@dataclass
class DominanceReport:
    spec: RandomRadialSpec
    tol: float
    points: list[DominancePoint]

    def to_json(self) -> str:
        payload = {
            "spec": {
                "seed": self.spec.seed,
                "family": self.spec.family,
                "count": self.spec.count,
            },
            "tol": self.tol,
            "points": [
                {
                    "grid_point": {"d": pt.d, "p": pt.p, "q": pt.q},
                    "trials": pt.trials,
                    "max_ratio": pt.max_ratio,
                    "k_rad": pt.k_rad,
                    "margin": pt.margin,
                    "argmax_label": pt.argmax_label,
                    "failures": pt.failures,
                }
                for pt in self.points
            ],
        }
        return json.dumps(payload, sort_keys=True, indent=2)


def run_dominance_suite(
    params_grid: Sequence[RestrictionParams],
    spec: RandomRadialSpec,
    tol: float = 1e-6,
    quad_tol: float = DEFAULT_REL_TOL,
    extra_profiles: Sequence[RadialProfile] = (),
    workers: Optional[int] = None,
) -> DominanceReport:
    """Empirical dominance check of the sharp radial constant.

    Every profile's restriction ratio must stay below
    k_rad * (1 + tol); violations land in the report's failure list
    (with the profile parameters needed to reproduce them) rather than
    raising.
    """
    profiles = list(generate_profiles(spec)) + list(extra_profiles)
    points: list[DominancePoint] = []
    for params in params_grid:
        k_rad = sharp_radial_constant(params, quad_tol).k_rad_first_principles

        def one_ratio(profile: RadialProfile) -> float:
            return ratio_z(params, profile, quad_tol)

        if workers is not None and workers > 1 and len(profiles) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                ratios = list(pool.map(one_ratio, profiles))
        else:
            ratios = [one_ratio(profile) for profile in profiles]
        max_ratio = 0.0
        argmax_label = ""
        failures = []
        for profile, ratio in zip(profiles, ratios):
            if ratio > max_ratio:
                max_ratio = ratio
                argmax_label = profile.label
            if ratio > k_rad * (1.0 + tol):
                failures.append({"label": profile.label, "ratio": ratio})
        points.append(
            DominancePoint(
                d=params.d,
                p=params.p,
                q=params.q,
                trials=len(profiles),
                max_ratio=max_ratio,
                k_rad=k_rad,
                margin=k_rad * (1.0 + tol) - max_ratio,
                argmax_label=argmax_label,
                failures=failures,
            )
        )
    return DominanceReport(spec=spec, tol=tol, points=points)
