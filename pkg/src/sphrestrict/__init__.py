"""Sharp constants for the spherical Fourier restriction inequality on
radial functions, with transfer into Grand Lebesgue Space norms.

The package is organised bottom-up:

- :mod:`sphrestrict.special_fns` -- Gamma, sphere areas, real-order Bessel
  J and its zeros;
- :mod:`sphrestrict.quadrature` -- adaptive Gauss-Kronrod, semi-infinite,
  and oscillatory Bessel-type integrals;
- :mod:`sphrestrict.radial_fourier` -- the radial transform G(s), radial
  L_p norms, and the sphere norm of a transform;
- :mod:`sphrestrict.restriction` -- admissibility, the Gaussian lower
  bound, the sharp radial constant and its extremal profile;
- :mod:`sphrestrict.gls` -- Grand Lebesgue norms, the cut set, the
  transfer weight zeta, and the transfer verifier;
- :mod:`sphrestrict.verify` -- seeded random profiles and independent
  oracle integrators;
- :mod:`sphrestrict.cli` -- the batch command-line interface.
"""

from .errors import ConvergenceError, DivergenceError, DomainError
from .gls import PsiWeight, ZetaWeight, cut_set, gls_norm, verify_transfer, zeta_from_psi
from .quadrature import (
    OscillatoryIntegrand,
    QuadResult,
    integrate_finite,
    integrate_oscillatory_bessel,
    integrate_semi_infinite_decaying,
    wynn_epsilon,
)
from .radial_fourier import (
    AlgebraicDecay,
    CompactSupport,
    GaussianDecay,
    GaussianProfile,
    RadialProfile,
    TransformValue,
    gaussian_profile,
    kernel_v,
    radial_full_integral,
    radial_hat,
    radial_lp_norm,
    sphere_norm_of_radial_hat,
)
from .restriction import (
    ExtremalProfile,
    GaussianBound,
    RestrictionParams,
    SharpConstantResult,
    consistency_report,
    extremal_profile,
    gaussian_lower_bound,
    gaussian_lower_bound_optimized,
    radial_convergence_admissible,
    ratio_z,
    sharp_radial_constant,
    tomas_stein_admissible,
)
from .special_fns import (
    BesselOrder,
    RadialKernel,
    bessel_j,
    bessel_j_derivative,
    bessel_j_zero,
    gamma,
    sphere_area,
)
from .verify import (
    RandomRadialSpec,
    generate_profiles,
    oracle_integrate,
    run_dominance_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BesselOrder",
    "RadialKernel",
    "gamma",
    "sphere_area",
    "bessel_j",
    "bessel_j_derivative",
    "bessel_j_zero",
    "QuadResult",
    "OscillatoryIntegrand",
    "integrate_finite",
    "integrate_semi_infinite_decaying",
    "integrate_oscillatory_bessel",
    "wynn_epsilon",
    "GaussianDecay",
    "CompactSupport",
    "AlgebraicDecay",
    "GaussianProfile",
    "RadialProfile",
    "TransformValue",
    "gaussian_profile",
    "kernel_v",
    "radial_hat",
    "radial_full_integral",
    "radial_lp_norm",
    "sphere_norm_of_radial_hat",
    "RestrictionParams",
    "SharpConstantResult",
    "ExtremalProfile",
    "GaussianBound",
    "tomas_stein_admissible",
    "radial_convergence_admissible",
    "gaussian_lower_bound",
    "gaussian_lower_bound_optimized",
    "sharp_radial_constant",
    "extremal_profile",
    "ratio_z",
    "consistency_report",
    "PsiWeight",
    "ZetaWeight",
    "gls_norm",
    "cut_set",
    "zeta_from_psi",
    "verify_transfer",
    "RandomRadialSpec",
    "generate_profiles",
    "oracle_integrate",
    "run_dominance_suite",
    "DomainError",
    "DivergenceError",
    "ConvergenceError",
]
