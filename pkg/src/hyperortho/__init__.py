"""Orthogonal polynomials defined by hypergeometric-type equations."""

from .errors import (AllZero, GridTooCoarse, HyperOrthoError, IndexBeyondCutoff, Inadmissible,
                     Mismatch, NonConvergence, NumericalFailure, OutOfDomain, WindowTooSmall)
from .exactpoly import RationalPoly, as_rational, format_rational
from .system import (CaseTag, HyperSystem, is_admissible, lambda_l, make_system, nu_cutoff,
                     weight_eval)
from .polygen import (PolySystemSlice, generate_phi, generate_phi_rodrigues, phi_zeros,
                      recurrence_coeffs)
from .ladder import (HalfPowerFn, LadderPair, apply_A, apply_A_plus, apply_H, assoc_from_phi,
                     lower_chain)
from .quad import QuadRule, inner_product, norm_sq, orthogonality_matrix
from .classical import ComplexRational, theorem2_reference
from .schrodinger import (BoundState, PotentialModel, SpectrumReport, fd_eigensolve, make_model,
                          potential_V, psi_eval, superpotential_W)

__version__ = "0.1.0"
