"""Exact polynomial ideal computations for the perfect cuboid system."""

from .ring import (
    ParseError,
    Permutation,
    Polynomial,
    Rational,
    Ring,
    RingMismatch,
    S3,
    apply_permutation,
    format_poly,
    is_invariant,
    parse,
    read_poly_file,
    substitute,
    symmetrize,
)
from .groebner import (
    Cofactors,
    GroebnerBasis,
    buchberger,
    cached_buchberger,
    elimination_ideal,
    ideal_equal,
    ideal_membership,
    is_groebner,
    reduce,
    spoly,
)
from .cuboid import (
    NotMultisymmetric,
    QForm,
    e_form,
    phi,
    reduce_xd_canonical,
    verify_all,
    verify_factor_conversions,
    verify_kernel_basis,
    verify_partial_relations,
    verify_phi_kernel,
    verify_sym_basis,
)
from .report import Claim, VerificationReport

__version__ = "0.1.0"
