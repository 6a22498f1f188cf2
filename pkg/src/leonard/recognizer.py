"""Decide whether a bidiagonal matrix pair is a Leonard pair.

The input shape is rigid: A lower bidiagonal with subdiagonal all 1, A*
upper bidiagonal, both with mutually distinct diagonals, and a nonzero
superdiagonal.  Recognition reads theta, theta_star and varphi straight
off the matrices, recovers phi from trace ratios, and accepts exactly
when the assembled parameter array is valid.  Validity guarantees the
witness property: the switching element S built from A's idempotents
commutes with A and conjugates A* onto the reversed-diagonal bidiagonal
matrix carrying phi in reverse order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import Matrix, mat_inv
from .parray import ParameterArray, validate_pa
from .realization import (DegenerateTraceError, idempotents, raising_matrix,
                          split_sequences_from_traces, switching_element,
                          switching_inverse)
from .report import VerificationError


@dataclass(frozen=True)
class BidiagonalPair:
    """Candidate matrices in the rigid split shape."""

    A: Matrix
    A_star: Matrix

    def shape_problem(self) -> str | None:
        """None when the shape invariants hold, else a reason label.

        Structural violations report "shape"; a repeated diagonal entry
        reports "PA2" and a zero superdiagonal entry "PA1", matching
        the validity conditions those degeneracies correspond to.
        """
        a, a_star = self.A, self.A_star
        if not (a.is_square and a_star.is_square and a.nrows == a_star.nrows):
            return "shape"
        if a.field != a_star.field:
            return "shape"
        n = a.nrows
        one = a.field.one
        for i in range(n):
            for j in range(n):
                if i == j + 1 and a.rows[i][j] != one:
                    return "shape"
                if i != j and i != j + 1 and a.rows[i][j]:
                    return "shape"
                if i != j and j != i + 1 and a_star.rows[i][j]:
                    return "shape"
        theta = [a.rows[i][i] for i in range(n)]
        theta_star = [a_star.rows[i][i] for i in range(n)]
        if len(set(theta)) != n or len(set(theta_star)) != n:
            return "PA2"
        if any(not a_star.rows[i][i + 1] for i in range(n - 1)):
            return "PA1"
        return None


@dataclass(frozen=True)
class Recognition:
    accepted: bool
    array: ParameterArray | None
    S: Matrix | None
    failed: str | None

    def to_json(self) -> dict:
        from . import jsonio

        return {
            "accept": self.accepted,
            "array": jsonio.parray_to_json(self.array) if self.array else None,
            "S": jsonio.matrix_to_json(self.S) if self.S else None,
            "failed": self.failed,
        }


def _reject(reason: str) -> Recognition:
    return Recognition(False, None, None, reason)


def recognize(pair: BidiagonalPair) -> Recognition:
    """Accept with the parameter array and witness S, or reject with a reason.

    Rejection reasons: "shape" for structural violations, "PA1".."PA5"
    for the failing validity condition, "trace" when a trace
    denominator vanishes while recovering the second split sequence.
    """
    problem = pair.shape_problem()
    if problem is not None:
        return _reject(problem)
    a, a_star = pair.A, pair.A_star
    n = a.nrows
    theta = tuple(a.rows[i][i] for i in range(n))
    theta_star = tuple(a_star.rows[i][i] for i in range(n))
    varphi = tuple(a_star.rows[i][i + 1] for i in range(n - 1))
    try:
        _, phi = split_sequences_from_traces(a, a_star, theta, theta_star)
    except DegenerateTraceError:
        return _reject("trace")
    arr = ParameterArray.of(a.field, theta, theta_star, varphi, phi)
    report = validate_pa(arr)
    if not report.valid:
        return _reject(report.first_failing() or "invalid")
    e_family = idempotents(a, theta)
    witness = switching_element(arr, e_family)
    if not conjugation_witness_check(pair, witness, phi,
                                     inverse=switching_inverse(arr, e_family)):
        raise VerificationError(
            "validated pair failed its own conjugation witness")
    return Recognition(True, arr, witness, None)


def conjugation_witness_check(pair: BidiagonalPair, x: Matrix,
                              phi: Sequence, *,
                              inverse: Matrix | None = None) -> bool:
    """Does x fix A under conjugation and reverse A* onto the phi matrix?

    The target is upper bidiagonal with the diagonal of A* reversed and
    superdiagonal (phi_d, ..., phi_1).  Raises if x is singular.
    """
    a, a_star = pair.A, pair.A_star
    field = a.field
    n = a.nrows
    x_inv = inverse if inverse is not None else mat_inv(x)
    if x_inv @ a @ x != a:
        return False
    theta_star = [a_star.rows[i][i] for i in range(n)]
    phi = [field(v) for v in phi]
    target = raising_matrix(field, theta_star[::-1], phi[::-1])
    return x_inv @ a_star @ x == target
