"""Cover-chase certification: nerves of saturated covers, the Cech double
complex over Z, and the zig-zag chase of simplicial cocycles."""

from .cech import (
    CechChain,
    CechCochain,
    cech_delta,
    cech_partial,
    cone,
    cone_dual,
    iterated_chase_bruteforce,
    iterated_chase_closed_form,
    palindromic_sign,
    subdivision_S,
)
from .chase import (
    CertificationError,
    TheoremCertificate,
    cech_cohomology,
    certify_theorem,
    cohomology_generators,
    evaluation_cocycle,
    zigzag_chase,
)
from .cover import GroundSetCover, SaturatedCoverDatum, nerve, saturate, star_cover, validate_datum
from .simplicial import Chain, Cochain, SimplicialComplex, boundary, coboundary, cohomology, homology
from .zint import AbelianGroupInvariants, IntMatrix, smith_normal_form, solve_linear

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupInvariants",
    "boundary",
    "cech_cohomology",
    "cech_delta",
    "cech_partial",
    "CechChain",
    "CechCochain",
    "CertificationError",
    "certify_theorem",
    "Chain",
    "coboundary",
    "Cochain",
    "cohomology",
    "cohomology_generators",
    "cone",
    "cone_dual",
    "evaluation_cocycle",
    "GroundSetCover",
    "homology",
    "IntMatrix",
    "iterated_chase_bruteforce",
    "iterated_chase_closed_form",
    "nerve",
    "palindromic_sign",
    "saturate",
    "SaturatedCoverDatum",
    "SimplicialComplex",
    "smith_normal_form",
    "solve_linear",
    "star_cover",
    "subdivision_S",
    "TheoremCertificate",
    "validate_datum",
    "zigzag_chase",
]
