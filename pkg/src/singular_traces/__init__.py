"""Traces of singular moduli at level 1 and at the genus-zero prime levels.

Two independent routes are provided: exact q-series and Jacobi form
arithmetic (``zagier_g``, ``construct_phi_p``) and high-precision evaluation
of j and the Hauptmoduls at Heegner points (``trace_oracle_level1``,
``trace_oracle_star``).  The Hecke module checks the congruences
``t(l^2 d) = 0 mod l`` on top of the exact tables.
"""

from .arith import GENUS_ZERO_PRIMES, kronecker
from .errors import (
    ConsistencyError, Inconsistent, InconsistentRepresentations, LiftNotFound, NoSolution,
    NonIntegralResult, NonTrivialKernel, NotNearInteger, OutOfWindow, PrecisionExceeded,
    TraceError, UnsupportedDiscriminant, UnsupportedLevel, ZeroLeadingTerm,
)
from .forms import (
    EtaQuotientSpec, TraceTableLevel1, delta, eisenstein, eisenstein_e4, eisenstein_e6,
    eta_quotient, j_series, theta_series, trace_level1, trace_table_level1, zagier_g,
)
from .hecke import (
    CongruenceReport, PlusSpaceTable, auto_qprec, b_ell, hecke, is_split,
    table_from_level1, table_from_phi, verify_level1, verify_star,
)
from .jacobi import JacobiExpansion, ZetaPolynomial, gen_a, gen_b, jacobi_mul, scale_by_form
from .oracle import (
    HauptmodulSpec, PrecisionContext, eval_eta, eval_hauptmodul, eval_j,
    trace_oracle_level1, trace_oracle_star,
)
from .phi import (
    CoefficientTable, PhiP, check_phi_invariants, construct_phi_p, extract_B, load_phi,
    save_phi, singular_audit, singular_classes, trace_star,
)
from .qlinalg import RationalMatrix, solve_affine
from .quadforms import (
    HeegnerPoint, QuadForm, class_representatives, heegner_point, hurwitz_sum,
    level_bijection_holds, lift_to_level, omega, reduce, valid_discriminants,
)
from .series import FourierSeries

__version__ = "0.1.0"
