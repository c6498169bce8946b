"""Exact computations for Cox rings of Chow quotients of torus actions on quadrics."""
from .errors import (CertificateFailed, ChowqError, DimensionMismatch, HypothesisViolated, InconsistentDiagram,
                     InvalidWeights, NoSolution, NotAFan, NotAHyperplane, NotHomogeneous, NotInSpan, NotOnTropical,
                     NotSurjective, OutsideSupport, ParseError, RankDeficient, ScaleExceeded, ShapeMismatch,
                     ZeroVector)
from .gkz import (GkzRay, VectorConfig, extremal_columns, gkz_cone_at, gkz_fan_bruteforce, gkz_rays_corank2,
                  movable_cone, p_cones, rho)
from .lattice import (IntMat, columns_generate_lattice, gale_dual, hermite_normal_form, kernel_basis,
                      primitive_part, smith_invariants, solve_diophantine)
from .laurent import LaurentPoly
from .lifting import (CertificateResult, EtaData, WeakLifting, common_cone_certificate, eta_rows, lift_h1,
                      prime_certificate_quadric, shift_polynomial, transfer_principal_ideal, weak_b_lifting)
from .polyhedral import Cone, Fan, common_refinement, dualize, intersect, quotient_fan, refines, relative_interior_contains
from .quadric import (CoxPresentation, HypothesisReport, WeightSystem, cox_ring_of_chow_quotient, reorder_weights,
                      validate_hypotheses)
from .tropres import (MdsReport, TropicalSetup, ZeroQuotientData, delta_fan, delta_prime_fan, lifted_tropical_fan,
                      mds_certificate, newton_setup, weak_tropical_resolution, zero_quotient)

__version__ = "0.1.0"
