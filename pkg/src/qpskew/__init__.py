"""Skew group algebras of quivers with potential under finite abelian groups.

Given a quiver Q with potential W and a finite abelian group G acting by
generalized permutations, ``qpskew`` builds the quiver Q_G and potential W_G
of the basic algebra Morita equivalent to the skew group algebra, and checks
the result against brute-force computations in (kQ)G and in the Ginzburg dg
algebras.

Typical use::

    from qpskew import bundled, make_choices, Transport

    inst = bundled("paper_z3xz3")
    act, base_change, W = inst.monomial()
    T = Transport(act, make_choices(act, inst.choices_seed))
    W_G = T.compute_WG(W)
"""
from .action import (
    InvalidAction, InvalidChoice, MonomialAction, NotInvariant, RawAction, check_invariance,
    chi_of, make_choices, normalize,
)
from .construct import NotInImage, QGArrow, QGVertex, Transport, build_QG, compute_WG
from .ginzburg import (
    GinzburgAlgebra, Phi, VerificationFailed, build_Phi, extend_action, verify_dg_iso,
)
from .group import AbelianGroup, characters_of, idempotent, restrict_character, subgroup_generated
from .instance import InstanceError, bundled, load_instance, parse_instance
from .quiver import Path, PathElement, Potential, Quiver, canonical_potential, cyc, partial, shuffle
from .scalar import ParseError, Scalar, format_scalar, parse_scalar, root_of_unity
from .skew import SkewAlgebra

__all__ = [
    "InvalidAction",
    "InvalidChoice",
    "MonomialAction",
    "NotInvariant",
    "RawAction",
    "check_invariance",
    "chi_of",
    "make_choices",
    "normalize",
    "NotInImage",
    "QGArrow",
    "QGVertex",
    "Transport",
    "build_QG",
    "compute_WG",
    "GinzburgAlgebra",
    "Phi",
    "VerificationFailed",
    "build_Phi",
    "extend_action",
    "verify_dg_iso",
    "AbelianGroup",
    "characters_of",
    "idempotent",
    "restrict_character",
    "subgroup_generated",
    "InstanceError",
    "bundled",
    "load_instance",
    "parse_instance",
    "Path",
    "PathElement",
    "Potential",
    "Quiver",
    "canonical_potential",
    "cyc",
    "partial",
    "shuffle",
    "ParseError",
    "Scalar",
    "format_scalar",
    "parse_scalar",
    "root_of_unity",
    "SkewAlgebra",
]

__version__ = "0.1.0"
