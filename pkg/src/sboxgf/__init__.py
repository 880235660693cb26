"""S-box construction from GF polynomials: BCN codec, coefficient reading,
seeded generation and quality metrics."""

__version__ = "0.1.0"

from .gfpoly import (
    GfPolynomial,
    PolyClass,
    Rank,
    Reducibility,
    classify,
    format_polynomial,
    is_irreducible,
    parse_polynomial,
    poly_add,
    poly_divmod,
    poly_mul,
    poly_normalize,
)
from .sbox import DES_S1_ROW0, SBox, identity_sbox, is_proper, reverse_sbox
from .bcn import (
    Bcn,
    bcn_to_decimal,
    bcn_to_polynomial,
    bcns_to_sbox,
    is_balanced,
    polynomial_to_bcn,
    sbox_to_bcns,
)
from .coeff import CoeffPermPoly, Order, big_sbox_probe, coeffs_from_sbox, sbox_from_coeffs
from .generator import CandidateReport, SearchConfig, Verdict, candidate_stats, generate, search
from .analysis import (
    MetricsReport,
    analyze,
    balancedness_profile,
    differential_uniformity,
    fixed_points,
    nonlinearity,
)

render_polynomial = format_polynomial
