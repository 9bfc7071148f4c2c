"""Exact computer algebra for coadjoint orbits of sym(n) x| GL+(n).

The package constructs the group and its Lie algebra inside sp(n), the
coadjoint action and orbit normal forms, semiinvariant polynomials and
the ideals of regular orbits, and a degree-by-degree deformation
quantization of the orbit's polynomial algebra with machine-checkable
certificates for every step.
"""

from .errors import (
    CapacityError,
    CertificationError,
    DomainError,
    OrbitQuantError,
    StructuralError,
)
from .groebner import groebner_basis, poly_normal_form, standard_monomials
from .hpoly import HPoly
from .invariants import (
    InvariantCertificate,
    OrbitIdeal,
    SemiinvariantFamily,
    no_invariants_certificate,
    orbit_ideal,
    orbit_ideal_from_normal_form,
    pfaffian,
    regularity_check,
    semiinvariant_family,
)
from .lie import (
    DualCoordinates,
    LieBasis,
    StructureConstants,
    build_lie_basis,
    lie_poisson_bracket,
    trace_pairing,
)
from .linalg import rational_kernel
from .ncpoly import NCPoly, PBWAlgebra, symmetrize
from .orbits import (
    DualPoint,
    GroupElement,
    LieElement,
    NormalForm,
    adjoint,
    coadjoint,
    embed_sp,
    group_inverse,
    group_multiply,
    normal_form,
    orbit_dimension,
)
from .poly import MonomialOrder, MultiPoly
from .quantize import OrbitQuantization, QuotientElement
from .verify import build_report, emit_report

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CertificationError",
    "DomainError",
    "DualCoordinates",
    "DualPoint",
    "GroupElement",
    "HPoly",
    "InvariantCertificate",
    "LieBasis",
    "LieElement",
    "MonomialOrder",
    "MultiPoly",
    "NCPoly",
    "NormalForm",
    "OrbitIdeal",
    "OrbitQuantError",
    "OrbitQuantization",
    "PBWAlgebra",
    "QuotientElement",
    "SemiinvariantFamily",
    "StructuralError",
    "StructureConstants",
    "adjoint",
    "build_lie_basis",
    "build_report",
    "coadjoint",
    "emit_report",
    "embed_sp",
    "group_inverse",
    "group_multiply",
    "groebner_basis",
    "lie_poisson_bracket",
    "no_invariants_certificate",
    "normal_form",
    "orbit_dimension",
    "orbit_ideal",
    "orbit_ideal_from_normal_form",
    "pfaffian",
    "poly_normal_form",
    "rational_kernel",
    "regularity_check",
    "semiinvariant_family",
    "standard_monomials",
    "symmetrize",
    "trace_pairing",
]
