"""Exact-arithmetic Leonard systems: construction, geometry, verification.

The core objects are the parameter array (the isomorphism invariant of
a Leonard system), its realization as a bidiagonal matrix pair in the
split basis, and the switching element S built from the idempotents of
the first operator.  Everything is computed exactly over the rationals
or a prime field, and every structural identity the machinery relies on
can be replayed through :func:`leonard.suite.run_suite`.
"""

from .fields import (GF, FieldDegeneracyError, ModularInteger, PrimeField,
                     QQ, RationalField, is_prime)
from .linalg import (Matrix, Poly, SingularMatrixError, Subspace, column_space,
                     expand_in_poly_basis, eta_ladder, kernel, mat_inv,
                     poly_apply, subspace_intersect, tau_eta_polys, tau_ladder)
from .parray import (D4Element, InconsistentSplitsError,
                     InvalidParameterArrayError, ParameterArray,
                     ParameterInputError, QParameter, ValidityReport,
                     d4_apply, d4_orbit, q_parameter, solve_splits,
                     validate_pa)
from .realization import (BracketTable, DegenerateTraceError, Realization,
                          brackets, brackets_closed_form_check,
                          compute_p_u_polys, dual_switching_element,
                          dual_switching_inverse, idempotents, mu_identities,
                          realize, relative_dual_switching,
                          relative_switching, s_matrix_closed_form,
                          s_star_matrix_closed_form,
                          split_sequences_from_traces, s_times_tau_relations,
                          switching_element, switching_inverse)
from .flags import (Decomposition, Flag, FlagGeometry, FlagLabel,
                    commutator_spectrum, decomposition, flag)
from .recognizer import (BidiagonalPair, Recognition,
                         conjugation_witness_check, recognize)
from .report import CheckResult, VerificationError
from .suite import CHECK_KEYS, TheoremReport, run_suite
from .generate import random_valid_array, standard_corpus

__version__ = "0.1.0"
