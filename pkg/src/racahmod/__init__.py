"""Exact Racah-Wigner recoupling machinery and the uniserial modules of the
perfect Lie algebra sl(2) acting on V(m).

The modules split along the natural layers: `exact` (rational and surd
arithmetic, exact linear algebra), `wigner` (triangle/Delta/CGC/6j and the
three-term recurrence), `sl2` (irreducible modules, tensor embeddings,
decomposition), `gmod` (representations of sl(2) semidirect V(m), socle
series, uniseriality), `constructions` (explicit uniserial module builders)
and `classify` (admissibility decision and the lambda = C * 6j
verification).  The `cli` module exposes everything as subcommands.
"""

from .classify import (
    compute_I_J,
    is_admissible,
    lambda_phi,
    verify_recoupling,
    verify_scalar_theorem,
)
from .constructions import (
    build_exceptional_len3,
    build_from_sequence,
    build_symmetric_power,
    build_z,
    build_z_dual,
    build_z_family,
)
from .exact import QMatrix, Rational, SqrtRational, binomial, factorial
from .gmod import GRep, check_rep, dual_rep, is_uniserial, socle_series
from .wigner import cgc, delta, find_sixj_zeros, sixj, triangle

__all__ = [
    "GRep",
    "QMatrix",
    "Rational",
    "SqrtRational",
    "binomial",
    "build_exceptional_len3",
    "build_from_sequence",
    "build_symmetric_power",
    "build_z",
    "build_z_dual",
    "build_z_family",
    "cgc",
    "check_rep",
    "compute_I_J",
    "delta",
    "dual_rep",
    "factorial",
    "find_sixj_zeros",
    "is_admissible",
    "is_uniserial",
    "lambda_phi",
    "sixj",
    "socle_series",
    "triangle",
    "verify_recoupling",
    "verify_scalar_theorem",
]

__version__ = "0.1.0"
