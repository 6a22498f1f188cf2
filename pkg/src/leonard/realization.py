"""Concrete split-basis matrices of a Leonard system and their operators.

A valid parameter array is realized on K^(d+1) in the basis where the
first operator A is lower bidiagonal (diagonal theta, subdiagonal all 1)
and the second operator A* is upper bidiagonal (diagonal theta_star,
superdiagonal varphi).  In this basis the 0th coordinate vector spans
the 0th eigenspace of A*, and applying the rising products tau_i(A) to
it walks through the whole coordinate basis.

From the realization we build the primitive idempotents of both
operators, the switching element S (the invertible combination of A's
idempotents whose coefficients are ratios of split products), its dual
S*, the normalized eigenspace-transport polynomials p_i/u_i, the bracket
coefficients [r,s,t] that govern every change between the four
rising/falling product ladders, and the closed-form triangular matrices
for S, S^-1, S*, S*^-1.
"""

from __future__ import annotations

from typing import Sequence

from .fields import Field, Scalar
from .linalg import (Matrix, Poly, SingularMatrixError, Subspace,
                     expand_in_poly_basis, eta_ladder, kernel, mat_inv,
                     poly_apply, tau_ladder, trace_product)
from .parray import (D4Element, ParameterArray, STAR, d4_apply, require_valid)
from .report import CheckResult, VerificationError, check_all


class DegenerateTraceError(ArithmeticError):
    """A trace denominator vanished: the pair is not a Leonard candidate."""


# ---------------------------------------------------------------------------
# Split products.

def prefix_products(field: Field, seq: Sequence) -> list:
    """[1, s_1, s_1 s_2, ...]: products of the first k entries."""
    out = [field.one]
    for s in seq:
        out.append(out[-1] * s)
    return out


def suffix_products(field: Field, seq: Sequence) -> list:
    """[1, s_d, s_d s_{d-1}, ...]: products of the last k entries."""
    out = [field.one]
    for s in reversed(seq):
        out.append(out[-1] * s)
    return out


class Realization:
    """Matrices of one Leonard system in its split basis.

    Attributes (all immutable after construction):
      arr        the defining parameter array
      A, A_star  the bidiagonal pair
      E, E_star  primitive idempotent families of A and A_star
      S, S_inv   switching element and its inverse
      S_star, S_star_inv  dual switching element and inverse
      tau, eta   rising/falling product ladders for theta
      tau_star, eta_star  the same for theta_star
    """

    __slots__ = ("arr", "field", "d", "A", "A_star", "E", "E_star",
                 "S", "S_inv", "S_star", "S_star_inv",
                 "tau", "eta", "tau_star", "eta_star")

    def __init__(self, arr: ParameterArray):
        require_valid(arr)
        field, d = arr.field, arr.d
        self.arr = arr
        self.field = field
        self.d = d
        self.A = lowering_matrix(field, arr.theta)
        self.A_star = raising_matrix(field, arr.theta_star, arr.varphi)
        self.E = idempotents(self.A, arr.theta)
        self.E_star = idempotents(self.A_star, arr.theta_star)
        self.S = switching_element(arr, self.E)
        self.S_inv = switching_inverse(arr, self.E)
        self.S_star = dual_switching_element(arr, self.E_star)
        self.S_star_inv = dual_switching_inverse(arr, self.E_star)
        self.tau = tuple(tau_ladder(field, arr.theta))
        self.eta = tuple(eta_ladder(field, arr.theta))
        self.tau_star = tuple(tau_ladder(field, arr.theta_star))
        self.eta_star = tuple(eta_ladder(field, arr.theta_star))
        self._sanity()

    def _sanity(self) -> None:
        ident = Matrix.identity(self.field, self.d + 1)
        total = Matrix.zero(self.field, self.d + 1)
        recon = Matrix.zero(self.field, self.d + 1)
        for theta_i, e_i in zip(self.arr.theta, self.E):
            total = total + e_i
            recon = recon + e_i.scale(theta_i)
        if total != ident or recon != self.A:
            raise VerificationError("idempotent resolution of A failed")
        if self.S @ self.S_inv != ident:
            raise VerificationError("switching element inverse failed")
        if self.S_star @ self.S_star_inv != ident:
            raise VerificationError("dual switching element inverse failed")

    @property
    def dim(self) -> int:
        return self.d + 1

    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def eigenspace_vector(self, family: Sequence[Matrix], i: int) -> tuple:
        """A deterministic nonzero spanning vector of the i-th eigenspace."""
        for col in family[i].columns():
            if any(col):
                return col
        raise VerificationError(f"idempotent {i} is the zero matrix")


def realize(arr: ParameterArray) -> Realization:
    return Realization(arr)


def lowering_matrix(field: Field, theta: Sequence) -> Matrix:
    """Lower bidiagonal: given diagonal, subdiagonal all 1."""
    n = len(theta)
    rows = [[field.zero] * n for _ in range(n)]
    for i, t in enumerate(theta):
        rows[i][i] = field(t)
        if i + 1 < n:
            rows[i + 1][i] = field.one
    return Matrix(tuple(tuple(r) for r in rows), field)


def raising_matrix(field: Field, theta: Sequence, upper: Sequence) -> Matrix:
    """Upper bidiagonal: given diagonal and superdiagonal."""
    n = len(theta)
    rows = [[field.zero] * n for _ in range(n)]
    for i, t in enumerate(theta):
        rows[i][i] = field(t)
    for i, v in enumerate(upper):
        rows[i][i + 1] = field(v)
    return Matrix(tuple(tuple(r) for r in rows), field)


def idempotents(m: Matrix, eigs: Sequence) -> tuple[Matrix, ...]:
    """Primitive idempotents of a multiplicity-free matrix.

    E_i is the Lagrange product of (M - e_j I)/(e_i - e_j) over j != i;
    it projects onto the one-dimensional e_i eigenspace.
    """
    field = m.field
    n = m.nrows
    eigs = [field(e) for e in eigs]
    ident = Matrix.identity(field, n)
    out = []
    for i, ei in enumerate(eigs):
        acc = ident
        denom = field.one
        for j, ej in enumerate(eigs):
            if j == i:
                continue
            acc = acc @ (m - ident.scale(ej))
            denom = denom * (ei - ej)
        out.append(acc.scale(field.one / denom))
    return tuple(out)


# ---------------------------------------------------------------------------
# Switching elements.

def _switch_coefficients(arr: ParameterArray) -> list:
    """c_r = (phi_d ... phi_{d-r+1}) / (varphi_1 ... varphi_r)."""
    field = arr.field
    coeffs = [field.one]
    for r in range(1, arr.d + 1):
        coeffs.append(coeffs[-1] * arr.phi[arr.d - r] / arr.varphi[r - 1])
    return coeffs


def _dual_switch_coefficients(arr: ParameterArray) -> list:
    """c_r = (phi_1 ... phi_r) / (varphi_1 ... varphi_r)."""
    field = arr.field
    coeffs = [field.one]
    for r in range(1, arr.d + 1):
        coeffs.append(coeffs[-1] * arr.phi[r - 1] / arr.varphi[r - 1])
    return coeffs


def _combine(coeffs: Sequence, family: Sequence[Matrix]) -> Matrix:
    acc = family[0].scale(coeffs[0])
    for c, e in zip(coeffs[1:], family[1:]):
        acc = acc + e.scale(c)
    return acc


def switching_element(arr: ParameterArray, e_family: Sequence[Matrix]) -> Matrix:
    """S as a combination of A's idempotents; the r = 0 coefficient is 1."""
    return _combine(_switch_coefficients(arr), e_family)


def switching_inverse(arr: ParameterArray, e_family: Sequence[Matrix]) -> Matrix:
    field = arr.field
    return _combine([field.one / c for c in _switch_coefficients(arr)],
                    e_family)


def dual_switching_element(arr: ParameterArray,
                           e_star_family: Sequence[Matrix]) -> Matrix:
    return _combine(_dual_switch_coefficients(arr), e_star_family)


def dual_switching_inverse(arr: ParameterArray,
                           e_star_family: Sequence[Matrix]) -> Matrix:
    field = arr.field
    return _combine([field.one / c for c in _dual_switch_coefficients(arr)],
                    e_star_family)


# ---------------------------------------------------------------------------
# Relatives under the dihedral action.

def _split_products(real: Realization) -> tuple[Scalar, Scalar]:
    """(product of all varphi_i, product of all phi_i)."""
    field = real.field
    vp = prefix_products(field, real.arr.varphi)[-1]
    ph = prefix_products(field, real.arr.phi)[-1]
    return vp, ph


_RELATIVE_TABLE = {
    # canonical word -> (base element, scale tag) for the switching element
    (): ("S", ""),
    ("down",): ("S_inv", ""),
    ("Down",): ("S", "vp/ph"),
    ("down", "Down"): ("S_inv", "ph/vp"),
    ("star",): ("S_star", ""),
    ("down", "star"): ("S_star", "vp/ph"),
    ("Down", "star"): ("S_star_inv", ""),
    ("down", "Down", "star"): ("S_star_inv", "ph/vp"),
}

# The dual switching element of a relative is the switching element of
# that relative composed with star.
_RELATIVE_DUAL_TABLE = {
    (): ("S_star", ""),
    ("down",): ("S_star", "vp/ph"),
    ("Down",): ("S_star_inv", ""),
    ("down", "Down"): ("S_star_inv", "ph/vp"),
    ("star",): ("S", ""),
    ("down", "star"): ("S_inv", ""),
    ("Down", "star"): ("S", "vp/ph"),
    ("down", "Down", "star"): ("S_inv", "ph/vp"),
}


def _scaled_table_entry(real: Realization, entry: tuple[str, str]) -> Matrix:
    name, tag = entry
    base: Matrix = getattr(real, name)
    if not tag:
        return base
    vp, ph = _split_products(real)
    return base.scale(vp / ph if tag == "vp/ph" else ph / vp)


def relative_switching(g: D4Element, real: Realization) -> Matrix:
    """The switching element of the g-relative, from the closed table."""
    return _scaled_table_entry(real, _RELATIVE_TABLE[g.canonical_word])


def relative_dual_switching(g: D4Element, real: Realization) -> Matrix:
    return _scaled_table_entry(real, _RELATIVE_DUAL_TABLE[g.canonical_word])


def relative_system(g: D4Element, real: Realization):
    """The g-relative's data inside the original coordinate space.

    Returns (array, primary operator, dual operator, primary idempotent
    family, dual idempotent family).  The operators are A or A_star and
    the idempotent families are the original ones, possibly reversed,
    exactly as the dihedral action permutes them.
    """
    word = g.canonical_word
    arr_g = d4_apply(g, real.arr)
    starred = "star" in word
    rev_e = "Down" in word
    rev_estar = "down" in word
    e_fam = real.E[::-1] if rev_e else real.E
    estar_fam = real.E_star[::-1] if rev_estar else real.E_star
    if starred:
        return arr_g, real.A_star, real.A, estar_fam, e_fam
    return arr_g, real.A, real.A_star, e_fam, estar_fam


def relative_switching_check(real: Realization) -> CheckResult:
    """Confirm the relatives' switching-element table for all 8 elements.

    For each relative the element is built independently from its own
    parameter array and idempotent family, then compared with the
    scaled table entry derived from S and S_star alone.
    """
    facts = []
    for g in D4Element.all_elements():
        arr_g, _, _, prim_fam, dual_fam = relative_system(g, real)
        independent = switching_element(arr_g, prim_fam)
        facts.append((f"switching of relative {g!r}",
                      independent == relative_switching(g, real)))
        independent_dual = dual_switching_element(arr_g, dual_fam)
        facts.append((f"dual switching of relative {g!r}",
                      independent_dual == relative_dual_switching(g, real)))
    return check_all("relative_switching_table", facts)


# ---------------------------------------------------------------------------
# Split sequences from traces.

def split_sequences_from_traces(a: Matrix, a_star: Matrix, theta: Sequence,
                                theta_star: Sequence) -> tuple[tuple, tuple]:
    """Recover (varphi, phi) from trace ratios against E*_0.

    varphi_i scales the trace of tau_i(A) E*_0 against tau_{i-1}(A) E*_0
    and phi_i does the same with the falling products eta.  A vanishing
    denominator trace means the pair cannot come from a Leonard system.
    """
    field = a.field
    d = a.nrows - 1
    theta = [field(t) for t in theta]
    theta_star = [field(t) for t in theta_star]
    e_star_0 = idempotents(a_star, theta_star)[0]

    def ladder_ratios(polys: Sequence[Poly]) -> list:
        traces = [trace_product(poly_apply(p, a), e_star_0) for p in polys]
        out = []
        for i in range(1, d + 1):
            if not traces[i - 1]:
                raise DegenerateTraceError(
                    f"vanishing trace denominator at index {i}")
            out.append((theta_star[0] - theta_star[i])
                       * traces[i] / traces[i - 1])
        return out

    varphi = ladder_ratios(tau_ladder(field, theta))
    phi = ladder_ratios(eta_ladder(field, theta))
    return tuple(varphi), tuple(phi)


# ---------------------------------------------------------------------------
# The transport polynomials p_i and u_i.

def krylov_matrix(real: Realization) -> Matrix:
    """Columns e_0, A e_0, ..., A^d e_0."""
    field = real.field
    vec = tuple(field.one if i == 0 else field.zero for i in range(real.dim))
    cols = [vec]
    for _ in range(real.d):
        vec = real.A.apply(vec)
        cols.append(vec)
    return Matrix.from_columns(field, cols)


def compute_p_u_polys(real: Realization) -> tuple[list[Poly], list[Poly]]:
    """The monic polynomials p_i moving E*_0V onto E*_iV, and u_i = p_i/p_i(theta_0).

    A spanning vector of E*_iV is written in the power basis
    {A^k e_0}; the coordinates are the coefficients of a polynomial g
    with g(A) e_0 spanning E*_iV.  Exactness of the degree and the
    closed value p_i(theta_0) = varphi_1...varphi_i / tau*_i(theta*_i)
    are checked, not assumed.
    """
    field = real.field
    arr = real.arr
    kry = krylov_matrix(real)
    kry_inv = mat_inv(kry)
    vp_prefix = prefix_products(field, arr.varphi)
    p_list: list[Poly] = []
    u_list: list[Poly] = []
    for i in range(real.d + 1):
        span_vec = real.eigenspace_vector(real.E_star, i)
        coords = kry_inv.apply(span_vec)
        poly = Poly.of(field, coords)
        if poly.degree != i:
            raise VerificationError(
                f"transport polynomial {i} has degree {poly.degree}")
        p_i = poly.monic()
        expected = vp_prefix[i] / real.tau_star[i](arr.theta_star[i])
        value = p_i(arr.theta[0])
        if not value or value != expected:
            raise VerificationError(
                f"p_{i}(theta_0) = {value}, expected {expected}")
        p_list.append(p_i)
        u_list.append(p_i.scale(field.one / value))
    return p_list, u_list


# ---------------------------------------------------------------------------
# Bracket coefficients.

class BracketTable:
    """The coefficients [r,s,t] for all triples with r+s+t = d.

    The normative definition used here is the change of basis between
    the rising and falling product ladders:

        tau_j  = sum_i [i, j-i, d-j] tau_{j-i}(theta_d)  eta_i
        eta_j  = sum_i [i, j-i, d-j] eta_{j-i}(theta_0)  tau_i

    and the same two displays for the starred ladders.  All four
    expansions and full permutation symmetry are verified at build
    time, so a table is internally consistent by construction.
    """

    __slots__ = ("d", "field", "_values")

    def __init__(self, d: int, field: Field, values: dict):
        self.d = d
        self.field = field
        self._values = values

    def value(self, r: int, s: int, t: int) -> Scalar:
        return self._values[(r, s, t)]

    def triples(self):
        return sorted(self._values)

    def __eq__(self, other):
        return (isinstance(other, BracketTable) and self.d == other.d
                and self.field == other.field
                and self._values == other._values)

    def __repr__(self):
        return f"BracketTable(d={self.d}, {len(self._values)} entries)"


def _expand_ladder(field: Field, from_ladder: Sequence[Poly],
                   into_ladder: Sequence[Poly], eval_points: Sequence,
                   d: int) -> dict:
    """Bracket values read off one ladder expansion.

    from_ladder[j] = sum_i [i, j-i, d-j] * weight(j-i) * into_ladder[i]
    where weight(k) = (product ladder of the source family)(point).
    """
    values: dict = {}
    for j in range(d + 1):
        coeffs = expand_in_poly_basis(from_ladder[j], into_ladder[:j + 1])
        for i in range(j + 1):
            weight = eval_points[j - i]
            values[(i, j - i, d - j)] = coeffs[i] / weight
    return values


def brackets(arr: ParameterArray) -> BracketTable:
    """Build the bracket table and verify all four routes agree."""
    require_valid(arr)
    field, d = arr.field, arr.d
    tau = tau_ladder(field, arr.theta)
    eta = eta_ladder(field, arr.theta)
    tau_s = tau_ladder(field, arr.theta_star)
    eta_s = eta_ladder(field, arr.theta_star)

    tau_at_thd = [p(arr.theta[d]) for p in tau]
    eta_at_th0 = [p(arr.theta[0]) for p in eta]
    taus_at_thsd = [p(arr.theta_star[d]) for p in tau_s]
    etas_at_ths0 = [p(arr.theta_star[0]) for p in eta_s]

    routes = {
        "tau-into-eta": _expand_ladder(field, tau, eta, tau_at_thd, d),
        "eta-into-tau": _expand_ladder(field, eta, tau, eta_at_th0, d),
        "tau*-into-eta*": _expand_ladder(field, tau_s, eta_s, taus_at_thsd, d),
        "eta*-into-tau*": _expand_ladder(field, eta_s, tau_s, etas_at_ths0, d),
    }
    reference = routes["tau-into-eta"]
    for name, values in routes.items():
        if values != reference:
            bad = next(t for t in sorted(reference)
                       if values.get(t) != reference[t])
            raise VerificationError(
                f"bracket route {name} disagrees at {bad}")
    for (r, s, t), v in reference.items():
        for perm in ((r, t, s), (s, r, t), (s, t, r), (t, r, s), (t, s, r)):
            if reference[perm] != v:
                raise VerificationError(
                    f"bracket symmetry broken between {(r, s, t)} and {perm}")
    return BracketTable(d, field, reference)


def q_pochhammer(field: Field, q: Scalar, n: int) -> Scalar:
    """(q; q)_n = (1 - q)(1 - q^2)...(1 - q^n)."""
    acc = field.one
    power = field.one
    for _ in range(n):
        power = power * q
        acc = acc * (field.one - power)
    return acc


def bracket_closed_form(field: Field, q: Scalar, r: int, s: int, t: int) -> Scalar:
    qq = [q_pochhammer(field, q, n) for n in range(r + s + t + 1)]
    return (qq[r + s] * qq[r + t] * qq[s + t]
            / (qq[r] * qq[s] * qq[t] * qq[r + s + t]))


def brackets_closed_form_check(arr: ParameterArray, q: Scalar,
                               table: BracketTable | None = None) -> bool:
    """Compare the table against the q-factorial quotient formula.

    Only meaningful when q lies in the base field and is not 0, 1 or
    -1; the caller is responsible for that precondition.
    """
    field = arr.field
    q = field(q)
    if q == 0 or q == 1 or q == -1:
        raise ValueError("closed form requires q outside {0, 1, -1}")
    if table is None:
        table = brackets(arr)
    qq = [q_pochhammer(field, q, n) for n in range(arr.d + 1)]
    for (r, s, t) in table.triples():
        closed = (qq[r + s] * qq[r + t] * qq[s + t]
                  / (qq[r] * qq[s] * qq[t] * qq[arr.d]))
        if closed != table.value(r, s, t):
            return False
    return True


# ---------------------------------------------------------------------------
# Closed-form triangular matrices.

def s_matrix_closed_form(arr: ParameterArray,
                         table: BracketTable | None = None) -> tuple[Matrix, Matrix]:
    """Entry formulas for S and S^-1 in the split basis (lower triangular)."""
    require_valid(arr)
    field, d = arr.field, arr.d
    if table is None:
        table = brackets(arr)
    tau_s = tau_ladder(field, arr.theta_star)
    eta_s = eta_ladder(field, arr.theta_star)
    taus_at_thsd = [p(arr.theta_star[d]) for p in tau_s]
    etas_at_ths0 = [p(arr.theta_star[0]) for p in eta_s]
    vp = prefix_products(field, arr.varphi)      # vp[k] = varphi_1...varphi_k
    ph_rev = suffix_products(field, arr.phi)     # ph_rev[k] = phi_d...phi_{d-k+1}

    s_rows = [[field.zero] * (d + 1) for _ in range(d + 1)]
    sinv_rows = [[field.zero] * (d + 1) for _ in range(d + 1)]
    for i in range(d + 1):
        for j in range(i + 1):
            br = table.value(j, i - j, d - i)
            s_rows[i][j] = br * ph_rev[j] * taus_at_thsd[i - j] / vp[i]
            sinv_rows[i][j] = br * vp[j] * etas_at_ths0[i - j] / ph_rev[i]
    return (Matrix(tuple(tuple(r) for r in s_rows), field),
            Matrix(tuple(tuple(r) for r in sinv_rows), field))


def s_star_matrix_closed_form(arr: ParameterArray,
                              table: BracketTable | None = None) -> tuple[Matrix, Matrix]:
    """Entry formulas for S* and S*^-1 in the split basis (upper triangular)."""
    require_valid(arr)
    field, d = arr.field, arr.d
    if table is None:
        table = brackets(arr)
    tau = tau_ladder(field, arr.theta)
    eta = eta_ladder(field, arr.theta)
    tau_at_thd = [p(arr.theta[d]) for p in tau]
    eta_at_th0 = [p(arr.theta[0]) for p in eta]
    vp = prefix_products(field, arr.varphi)
    ph = prefix_products(field, arr.phi)

    s_rows = [[field.zero] * (d + 1) for _ in range(d + 1)]
    sinv_rows = [[field.zero] * (d + 1) for _ in range(d + 1)]
    for j in range(d + 1):
        for i in range(j + 1):
            br = table.value(i, j - i, d - j)
            s_rows[i][j] = br * ph[i] * tau_at_thd[j - i] / vp[i]
            sinv_rows[i][j] = br * vp[j] * eta_at_th0[j - i] / ph[j]
    return (Matrix(tuple(tuple(r) for r in s_rows), field),
            Matrix(tuple(tuple(r) for r in sinv_rows), field))


# ---------------------------------------------------------------------------
# Identity bundles.

def _ladder_matrices(real: Realization) -> dict:
    """Cached matrix values of all four polynomial ladders."""
    return {
        "tauA": [poly_apply(p, real.A) for p in real.tau],
        "etaA": [poly_apply(p, real.A) for p in real.eta],
        "tausAs": [poly_apply(p, real.A_star) for p in real.tau_star],
        "etasAs": [poly_apply(p, real.A_star) for p in real.eta_star],
    }


def switching_tau_expansion_check(real: Realization,
                                  ladders: dict | None = None,
                                  table: BracketTable | None = None) -> CheckResult:
    """S tau_j(A) and S^-1 tau_j(A) as upward combinations of tau_i(A).

    The coefficients mix a bracket value, a run of split products and
    one starred ladder evaluation; the combination runs from i = j up
    to d, which is what makes the matrices of S and S^-1 lower
    triangular in the split basis.
    """
    arr = real.arr
    field, d = real.field, real.d
    ladders = ladders or _ladder_matrices(real)
    table = table or brackets(arr)
    tau_a = ladders["tauA"]
    vp = prefix_products(field, arr.varphi)
    ph_rev = suffix_products(field, arr.phi)
    taus_at_thsd = [p(arr.theta_star[d]) for p in real.tau_star]
    etas_at_ths0 = [p(arr.theta_star[0]) for p in real.eta_star]
    facts = []
    for j in range(d + 1):
        rhs = Matrix.zero(field, d + 1)
        rhs_inv = Matrix.zero(field, d + 1)
        for i in range(j, d + 1):
            br = table.value(j, i - j, d - i)
            rhs = rhs + tau_a[i].scale(
                br * ph_rev[j] * taus_at_thsd[i - j] / vp[i])
            rhs_inv = rhs_inv + tau_a[i].scale(
                br * vp[j] * etas_at_ths0[i - j] / ph_rev[i])
        facts.append((f"S tau_{j}(A)", real.S @ tau_a[j] == rhs))
        facts.append((f"S^-1 tau_{j}(A)", real.S_inv @ tau_a[j] == rhs_inv))
    return check_all("switching_tau_expansion", facts)


def switching_ladder_action_check(real: Realization,
                                  ladders: dict | None = None) -> CheckResult:
    """S and S* turn falling-ladder corner images into rising-ladder ones.

    Applying S to eta*_{d-i}(A*) E_d or eta*_i(A*) E_0 lands on the
    matching tau* image scaled by (phi_d...phi_{d-i+1})/(varphi_1...varphi_i);
    the dual statements for S* use the unreversed ratio.
    """
    arr = real.arr
    field, d = real.field, real.d
    ladders = ladders or _ladder_matrices(real)
    tau_a, eta_a = ladders["tauA"], ladders["etaA"]
    taus_as, etas_as = ladders["tausAs"], ladders["etasAs"]
    vp = prefix_products(field, arr.varphi)
    ph = prefix_products(field, arr.phi)
    ph_rev = suffix_products(field, arr.phi)
    e0, ed = real.E[0], real.E[d]
    es0, esd = real.E_star[0], real.E_star[d]
    facts = []
    for i in range(d + 1):
        ratio = ph_rev[i] / vp[i]
        facts.append((f"S eta*_{d - i}(A*) E_d, i={i}",
                      real.S @ etas_as[d - i] @ ed
                      == (taus_as[d - i] @ ed).scale(ratio)))
        facts.append((f"S eta*_{i}(A*) E_0, i={i}",
                      real.S @ etas_as[i] @ e0
                      == (taus_as[i] @ e0).scale(ratio)))
        dual_ratio = ph[i] / vp[i]
        facts.append((f"S* eta_{d - i}(A) E*_d, i={i}",
                      real.S_star @ eta_a[d - i] @ esd
                      == (tau_a[d - i] @ esd).scale(dual_ratio)))
        facts.append((f"S* eta_{i}(A) E*_0, i={i}",
                      real.S_star @ eta_a[i] @ es0
                      == (tau_a[i] @ es0).scale(dual_ratio)))
    return check_all("switching_ladder_action", facts)


def switching_corner_action_check(real: Realization) -> CheckResult:
    """S E*_0, S^-1 E*_d, S* E_0, S*^-1 E_d as scaled idempotent corners.

    Each left-hand side equals two different triple products of extreme
    idempotents, scaled by ladder evaluations over split products.
    """
    arr = real.arr
    field, d = real.field, real.d
    vp = prefix_products(field, arr.varphi)
    ph = prefix_products(field, arr.phi)
    tau_d_at = real.tau[d](arr.theta[d])
    eta_d_at = real.eta[d](arr.theta[0])
    taus_d_at = real.tau_star[d](arr.theta_star[d])
    etas_d_at = real.eta_star[d](arr.theta_star[0])
    e0, ed = real.E[0], real.E[d]
    es0, esd = real.E_star[0], real.E_star[d]
    corner_cases = [
        ("S E*_0", real.S @ es0,
         (esd @ ed @ es0).scale(tau_d_at * taus_d_at / vp[d]),
         (esd @ e0 @ es0).scale(eta_d_at * taus_d_at / vp[d])),
        ("S^-1 E*_d", real.S_inv @ esd,
         (es0 @ ed @ esd).scale(tau_d_at * etas_d_at / ph[d]),
         (es0 @ e0 @ esd).scale(eta_d_at * etas_d_at / ph[d])),
        ("S* E_0", real.S_star @ e0,
         (ed @ esd @ e0).scale(taus_d_at * tau_d_at / vp[d]),
         (ed @ es0 @ e0).scale(etas_d_at * tau_d_at / vp[d])),
        ("S*^-1 E_d", real.S_star_inv @ ed,
         (e0 @ esd @ ed).scale(taus_d_at * eta_d_at / ph[d]),
         (e0 @ es0 @ ed).scale(etas_d_at * eta_d_at / ph[d])),
    ]
    facts = []
    for label, lhs, first, second in corner_cases:
        facts.append((f"{label} (first form)", lhs == first))
        facts.append((f"{label} (second form)", lhs == second))
    return check_all("switching_corner_action", facts)


def dual_switching_tau_expansion_check(real: Realization,
                                       ladders: dict | None = None,
                                       table: BracketTable | None = None) -> CheckResult:
    """S* tau_j(A) E*_0 and S*^-1 tau_j(A) E*_0 as downward combinations."""
    arr = real.arr
    field, d = real.field, real.d
    ladders = ladders or _ladder_matrices(real)
    table = table or brackets(arr)
    tau_a = ladders["tauA"]
    vp = prefix_products(field, arr.varphi)
    ph = prefix_products(field, arr.phi)
    tau_at_thd = [p(arr.theta[d]) for p in real.tau]
    eta_at_th0 = [p(arr.theta[0]) for p in real.eta]
    es0 = real.E_star[0]
    tau_es0 = [t @ es0 for t in tau_a]
    facts = []
    for j in range(d + 1):
        rhs = Matrix.zero(field, d + 1)
        rhs_inv = Matrix.zero(field, d + 1)
        for i in range(j + 1):
            br = table.value(i, j - i, d - j)
            rhs = rhs + tau_es0[i].scale(
                br * ph[i] * tau_at_thd[j - i] / vp[i])
            rhs_inv = rhs_inv + tau_es0[i].scale(
                br * vp[j] * eta_at_th0[j - i] / ph[j])
        facts.append((f"S* tau_{j}(A) E*_0",
                      real.S_star @ tau_es0[j] == rhs))
        facts.append((f"S*^-1 tau_{j}(A) E*_0",
                      real.S_star_inv @ tau_es0[j] == rhs_inv))
    return check_all("dual_switching_tau_expansion", facts)


def s_times_tau_relations(real: Realization,
                          ladders: dict | None = None,
                          table: BracketTable | None = None) -> list[CheckResult]:
    """All expansion and corner identities tying S, S* to the ladders."""
    ladders = ladders or _ladder_matrices(real)
    table = table or brackets(real.arr)
    return [
        switching_tau_expansion_check(real, ladders, table),
        switching_ladder_action_check(real, ladders),
        switching_corner_action_check(real),
        dual_switching_tau_expansion_check(real, ladders, table),
    ]


def idempotent_transfer_check(real: Realization,
                              ladders: dict | None = None) -> CheckResult:
    """Ladder images of one family's corner idempotents, via the other family.

    Eight identity families: applying a rising or falling ladder of A
    to E*_0 or E*_d and then projecting with E_0 or E_d equals a
    starred ladder image of that projector, scaled by a split product
    over a full ladder evaluation -- and the four statements with the
    roles of the families exchanged.
    """
    arr = real.arr
    field, d = real.field, real.d
    if ladders is None:
        ladders = _ladder_matrices(real)
    tau_a, eta_a = ladders["tauA"], ladders["etaA"]
    taus_as, etas_as = ladders["tausAs"], ladders["etasAs"]
    vp = prefix_products(field, arr.varphi)
    ph = prefix_products(field, arr.phi)
    vp_rev = suffix_products(field, arr.varphi)
    ph_rev = suffix_products(field, arr.phi)
    tau_d_at = real.tau[d](arr.theta[d])
    eta_d_at = real.eta[d](arr.theta[0])
    taus_d_at = real.tau_star[d](arr.theta_star[d])
    etas_d_at = real.eta_star[d](arr.theta_star[0])
    e0, ed = real.E[0], real.E[d]
    es0, esd = real.E_star[0], real.E_star[d]

    families = [
        ("eta_i(A) E*_0 E_0", lambda i: eta_a[i] @ es0 @ e0,
         lambda i: (etas_as[d - i] @ e0).scale(ph[i] / etas_d_at)),
        ("eta_i(A) E*_d E_0", lambda i: eta_a[i] @ esd @ e0,
         lambda i: (taus_as[d - i] @ e0).scale(vp_rev[i] / taus_d_at)),
        ("tau_i(A) E*_0 E_d", lambda i: tau_a[i] @ es0 @ ed,
         lambda i: (etas_as[d - i] @ ed).scale(vp[i] / etas_d_at)),
        ("tau_i(A) E*_d E_d", lambda i: tau_a[i] @ esd @ ed,
         lambda i: (taus_as[d - i] @ ed).scale(ph_rev[i] / taus_d_at)),
        ("eta*_i(A*) E_0 E*_0", lambda i: etas_as[i] @ e0 @ es0,
         lambda i: (eta_a[d - i] @ es0).scale(ph_rev[i] / eta_d_at)),
        ("eta*_i(A*) E_d E*_0", lambda i: etas_as[i] @ ed @ es0,
         lambda i: (tau_a[d - i] @ es0).scale(vp_rev[i] / tau_d_at)),
        ("tau*_i(A*) E_0 E*_d", lambda i: taus_as[i] @ e0 @ esd,
         lambda i: (eta_a[d - i] @ esd).scale(vp[i] / eta_d_at)),
        ("tau*_i(A*) E_d E*_d", lambda i: taus_as[i] @ ed @ esd,
         lambda i: (tau_a[d - i] @ esd).scale(ph[i] / tau_d_at)),
    ]
    facts = []
    for label, lhs_fn, rhs_fn in families:
        for i in range(d + 1):
            facts.append((f"{label}, i={i}", lhs_fn(i) == rhs_fn(i)))
    return check_all("idempotent_transfer", facts)


def idempotent_corner_check(real: Realization) -> CheckResult:
    """E_0 E*_d E_d E*_0 is E_0 E*_0 scaled by varphi products over ladders."""
    arr = real.arr
    field, d = real.field, real.d
    vp = prefix_products(field, arr.varphi)
    tau_d_at = real.tau[d](arr.theta[d])
    taus_d_at = real.tau_star[d](arr.theta_star[d])
    e0, es0, esd, ed = real.E[0], real.E_star[0], real.E_star[d], real.E[d]
    return check_all("idempotent_corner_product", [(
        "E_0 E*_d E_d E*_0",
        e0 @ esd @ ed @ es0 == (e0 @ es0).scale(vp[d] / (tau_d_at * taus_d_at)),
    )])


def mu_identities(real: Realization,
                  ladders: dict | None = None) -> list[CheckResult]:
    """The idempotent-transfer families plus the corner product identity."""
    return [idempotent_transfer_check(real, ladders),
            idempotent_corner_check(real)]


# ---------------------------------------------------------------------------
# Characterizations of the switching element.

def switching_equals_poly_check(real: Realization,
                                u_list: Sequence[Poly] | None = None) -> CheckResult:
    """S is the top normalized transport polynomial evaluated at A."""
    if u_list is None:
        _, u_list = compute_p_u_polys(real)
    return check_all("switching_equals_u_d_of_A", [
        ("u_d(A) = S", poly_apply(u_list[real.d], real.A) == real.S)])


def switching_characterization_check(real: Realization) -> CheckResult:
    """S commutes with A, carries E*_0V onto E*_dV, and is unique doing so.

    Uniqueness: among polynomials in A of degree at most d, those
    carrying E*_0V into E*_dV form a one-dimensional space, and its
    generator is a scalar multiple of S.
    """
    field, d = real.field, real.d
    v = real.eigenspace_vector(real.E_star, 0)
    w = real.eigenspace_vector(real.E_star, d)
    facts = [("S commutes with A", real.S @ real.A == real.A @ real.S)]
    source = Subspace.span(field, real.dim, [v])
    target = Subspace.span(field, real.dim, [w])
    facts.append(("S E*_0V = E*_dV", source.image(real.S) == target))

    kry = krylov_matrix(real)
    pivot = next(k for k, e in enumerate(w) if e)
    constraint_rows = []
    for i in range(real.dim):
        if i == pivot:
            continue
        constraint_rows.append(tuple(
            kry.rows[i][k] * w[pivot] - kry.rows[pivot][k] * w[i]
            for k in range(real.dim)))
    solutions = kernel(Matrix(tuple(constraint_rows), field)) if constraint_rows \
        else Subspace.full(field, real.dim)
    facts.append(("solution space is one-dimensional", solutions.dim == 1))
    if solutions.dim == 1:
        candidate = poly_apply(Poly.of(field, solutions.cols[0]), real.A)
        i0, j0 = next((i, j) for i in range(real.dim)
                      for j in range(real.dim) if real.S.rows[i][j])
        scale = candidate.rows[i0][j0] / real.S.rows[i0][j0]
        facts.append(("generator is a scalar multiple of S",
                      bool(scale) and candidate == real.S.scale(scale)))
    return check_all("switching_characterization", facts)


def duality_check(real: Realization, real_star: Realization | None = None,
                  u_list: Sequence[Poly] | None = None,
                  u_star_list: Sequence[Poly] | None = None) -> CheckResult:
    """Evaluation duality between the two normalized polynomial families.

    u_i at the j-th eigenvalue of A equals the starred u_j at the i-th
    eigenvalue of A*, and the top starred values are the split-product
    ratios phi_1...phi_i / varphi_1...varphi_i.
    """
    arr = real.arr
    field, d = real.field, real.d
    if real_star is None:
        real_star = realize(d4_apply(D4Element.of(STAR), arr))
    if u_list is None:
        _, u_list = compute_p_u_polys(real)
    if u_star_list is None:
        _, u_star_list = compute_p_u_polys(real_star)
    facts = []
    for i in range(d + 1):
        for j in range(d + 1):
            facts.append((
                f"u_{i}(theta_{j}) = u*_{j}(theta*_{i})",
                u_list[i](arr.theta[j]) == u_star_list[j](arr.theta_star[i])))
    vp = prefix_products(field, arr.varphi)
    ph = prefix_products(field, arr.phi)
    for i in range(d + 1):
        facts.append((
            f"u*_d(theta*_{i}) is the split ratio at {i}",
            u_star_list[d](arr.theta_star[i]) == ph[i] / vp[i]))
    return check_all("transport_duality", facts)


def annihilator_check(real: Realization, samples: int = 10) -> CheckResult:
    """No nonzero polynomial in A of degree <= d kills E*_0.

    Equivalent to the power basis {A^k e_0} being linearly independent,
    which is checked directly; a few deterministic pseudo-random
    polynomials are also pushed through as a smoke test of the
    equivalence itself.
    """
    import random

    field = real.field
    facts = []
    try:
        mat_inv(krylov_matrix(real))
        facts.append(("power basis is independent", True))
    except SingularMatrixError:
        facts.append(("power basis is independent", False))
    rng = random.Random(20240 + real.d)
    es0 = real.E_star[0]
    for k in range(samples):
        coeffs = [rng.randrange(-5, 6) for _ in range(real.d + 1)]
        f = Poly.of(field, coeffs)
        image = poly_apply(f, real.A) @ es0
        facts.append((f"sample {k} kills E*_0 only if zero",
                      image.is_zero == (poly_apply(f, real.A)).is_zero))
    return check_all("trivial_annihilator", facts)
