"""Exact p-adic tools for entire and meromorphic functions over C_p.

Functions enter through the valuations of their Taylor coefficients.  The
package computes Newton polygons, the maximum modulus and zero counts,
certifies primeness properties from coefficient growth, and decides which
polynomials commute with a truncated series.
"""

__version__ = "0.1.0"

from .arith import INF, Rat, as_rat, check_prime, floor_int, format_ext, format_rat, parse_ext, parse_rat, val_p
from .errors import *  # noqa: F401,F403
from .permutability import (
    AffineMap,
    CounterexampleFound,
    HypothesisNotMet,
    OnlyIdentity,
    SupportSpec,
    build_commuting_pair,
    commute_residual,
    corollary34_check,
    find_affine_commutants,
    polynomial_commutants,
    verify_support_commutation,
)
from .polygon import (
    FamilyModel,
    ListModel,
    NewtonPolygon,
    PolyModel,
    PrefixTailModel,
    TailCertificate,
    critical_radii,
    derive_n0,
    growth_classify,
    lemma33_witness,
    max_modulus_log,
    newton_polygon,
    rho,
    zero_counts,
)
from .primeness import (
    Certificate,
    Evidence,
    Hypothesis,
    Kind,
    MeromorphicModel,
    Verdict,
    build_prop214_family,
    check_dominates,
    check_ratio_condition,
    multiple_zero_localization,
    rule_engine,
)
from .series import Poly, TruncatedSeries, compose, derivative, wronskian, wronskian_n
