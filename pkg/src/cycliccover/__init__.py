"""Exact cohomology bases for cyclic covers of the projective line.

The package constructs explicit bases of the holomorphic differentials,
the first sheaf cohomology of the structure sheaf, and the first de Rham
cohomology of curves y^n = f(x) (Kummer covers, n prime to the
characteristic) and y^p - y = r(x) (Artin-Schreier covers), over a finite
field chosen large enough to contain all branch points and roots of unity
in play.  Everything is exact: field elements, polynomials, rational
functions and function-field elements carry no floating point anywhere.

Modules
-------
gf          finite field arithmetic F_q = F_p[z]/(m(z))
polyrat     polynomials and reduced rational functions over F_q
curve       curve models, validation, ramification and Euclidean tables
funcfield   function field arithmetic, trace, differentials, valuations
cohomology  the three bases and the auxiliary polynomials
verify      machine verification of the asserted identities
cli         batch front end (info / basis / verify / sweep)
"""

from .gf import FieldSpec, FieldElement, nth_root_of_unity
from .polyrat import Poly, RatFn, poly_gcd, split_at_degree, residue_at_infinity
from .curve import (
    KummerCurve,
    ASCurve,
    Violation,
    CurveInvalidError,
    validate,
    ram_data,
    mu_table,
    genus_rh,
    genus_from_basis,
)
from .funcfield import FFElem, FFDiff, PlaceClass, place_classes, valuation_bound, pairing
from .cohomology import (
    BasisIndex,
    DeRhamTriple,
    DeRhamClass,
    omega_basis,
    h1_basis,
    kummer_aux,
    as_aux,
    derham_basis,
    map_i,
    map_p,
    h1_coordinates,
)
from .verify import (
    CheckResult,
    VerifyOptions,
    duality_matrix,
    cocycle_check,
    locus_check,
    divisor_checks,
    dimension_check,
    exactness_check,
    full_report,
)

__all__ = [
    "FieldSpec",
    "FieldElement",
    "nth_root_of_unity",
    "Poly",
    "RatFn",
    "poly_gcd",
    "split_at_degree",
    "residue_at_infinity",
    "KummerCurve",
    "ASCurve",
    "Violation",
    "CurveInvalidError",
    "validate",
    "ram_data",
    "mu_table",
    "genus_rh",
    "genus_from_basis",
    "FFElem",
    "FFDiff",
    "PlaceClass",
    "place_classes",
    "valuation_bound",
    "pairing",
    "BasisIndex",
    "DeRhamTriple",
    "DeRhamClass",
    "omega_basis",
    "h1_basis",
    "kummer_aux",
    "as_aux",
    "derham_basis",
    "map_i",
    "map_p",
    "h1_coordinates",
    "CheckResult",
    "VerifyOptions",
    "duality_matrix",
    "cocycle_check",
    "locus_check",
    "divisor_checks",
    "dimension_check",
    "exactness_check",
    "full_report",
]

__version__ = "0.1.0"
