"""The full verification suite: every structural identity on one array.

``run_suite`` realizes a valid parameter array once and then drives
every check this package knows about -- polynomial and spectral
descriptions of the switching element, the bracket machinery, the flag
and decomposition geometry, the dihedral relatives, the commutator
spectra.  Each check lands in the report exactly once with a pass/fail
status, a witness for the first failure, and its elapsed time.

All arithmetic is exact, so there are no tolerances anywhere: a single
failing entry on a valid array means an implementation bug, not noise.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property

from . import flags as flg
from . import realization as rlz
from .parray import (D4Element, ParameterArray, STAR, d4_apply,
                     d4_relations_check, q_parameter, validate_pa)
from .report import CheckResult, check_all


@dataclass(frozen=True)
class TheoremReport:
    """Deterministic ledger of all executed checks."""

    entries: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(e.ok for e in self.entries)

    def entry(self, key: str) -> CheckResult:
        for e in self.entries:
            if e.key == key:
                return e
        raise KeyError(key)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(e for e in self.entries if not e.ok)

    def to_json(self, timing: bool = False) -> list[dict]:
        return [e.to_json(timing) for e in self.entries]


class SuiteContext:
    """Shared lazily-computed artifacts for the checks."""

    def __init__(self, arr: ParameterArray):
        self.arr = arr

    @cached_property
    def real(self) -> rlz.Realization:
        return rlz.realize(self.arr)

    @cached_property
    def geom(self) -> flg.FlagGeometry:
        return flg.FlagGeometry(self.real)

    @cached_property
    def ladders(self) -> dict:
        return rlz._ladder_matrices(self.real)

    @cached_property
    def table(self) -> rlz.BracketTable:
        return rlz.brackets(self.arr)

    @cached_property
    def u_polys(self) -> list:
        return rlz.compute_p_u_polys(self.real)[1]

    @cached_property
    def real_star(self) -> rlz.Realization:
        return rlz.realize(d4_apply(D4Element.of(STAR), self.arr))

    @cached_property
    def u_star_polys(self) -> list:
        return rlz.compute_p_u_polys(self.real_star)[1]


def _check_idempotent_algebra(ctx: SuiteContext) -> CheckResult:
    real = ctx.real
    facts = []
    for name, op, fam, eigs in (("A", real.A, real.E, real.arr.theta),
                                ("A*", real.A_star, real.E_star,
                                 real.arr.theta_star)):
        for i in range(real.dim):
            facts.append((f"{name}: E_{i} is idempotent",
                          fam[i] @ fam[i] == fam[i]))
            facts.append((f"{name}: {name} E_{i} = theta_{i} E_{i}",
                          op @ fam[i] == fam[i].scale(eigs[i])))
            for j in range(real.dim):
                if i != j:
                    facts.append((f"{name}: E_{i} E_{j} = 0",
                                  (fam[i] @ fam[j]).is_zero))
    total = real.E[0]
    for e in real.E[1:]:
        total = total + e
    facts.append(("idempotents of A sum to the identity",
                  total == real.identity()))
    facts.append(("left normalization E_0 S = E_0",
                  real.E[0] @ real.S == real.E[0]))
    return check_all("idempotent_algebra", facts)


def _check_trace_splits(ctx: SuiteContext) -> CheckResult:
    real = ctx.real
    varphi, phi = rlz.split_sequences_from_traces(
        real.A, real.A_star, real.arr.theta, real.arr.theta_star)
    return check_all("trace_split_sequences", [
        ("varphi from traces", varphi == real.arr.varphi),
        ("phi from traces", phi == real.arr.phi),
    ])


def _check_transport_polys(ctx: SuiteContext) -> CheckResult:
    # compute_p_u_polys verifies degrees and the closed evaluation at
    # theta_0 internally; reaching here means those postconditions held.
    u = ctx.u_polys
    real = ctx.real
    facts = [("u_0 = 1", u[0].degree == 0 and u[0](0) == real.field.one)]
    source = flg.Subspace.span(real.field, real.dim,
                               [real.eigenspace_vector(real.E_star, 0)])
    for i in range(real.dim):
        target = flg.Subspace.span(real.field, real.dim,
                                   [real.eigenspace_vector(real.E_star, i)])
        facts.append((f"u_{i}(A) E*_0V = E*_{i}V",
                      source.image(rlz.poly_apply(u[i], real.A)) == target))
    return check_all("transport_polynomials", facts)


def _check_triangular_closed_forms(ctx: SuiteContext) -> CheckResult:
    real = ctx.real
    s_cf, s_inv_cf = rlz.s_matrix_closed_form(real.arr, ctx.table)
    ss_cf, ss_inv_cf = rlz.s_star_matrix_closed_form(real.arr, ctx.table)

    def lower(m) -> bool:
        return all(not m.rows[i][j] for i in range(real.dim)
                   for j in range(i + 1, real.dim))

    def upper(m) -> bool:
        return all(not m.rows[i][j] for i in range(real.dim)
                   for j in range(i))

    return check_all("triangular_closed_forms", [
        ("closed-form S is lower triangular", lower(s_cf)),
        ("closed-form S^-1 is lower triangular", lower(s_inv_cf)),
        ("closed-form S* is upper triangular", upper(ss_cf)),
        ("closed-form S*^-1 is upper triangular", upper(ss_inv_cf)),
        ("closed-form S matches the spectral S", s_cf == real.S),
        ("closed-form S^-1 matches", s_inv_cf == real.S_inv),
        ("closed-form S* matches", ss_cf == real.S_star),
        ("closed-form S*^-1 matches", ss_inv_cf == real.S_star_inv),
    ])


def _check_bracket_expansions(ctx: SuiteContext) -> CheckResult:
    # Building the table runs all four expansion routes and the full
    # permutation-symmetry comparison; failures raise.
    table = ctx.table
    d = ctx.arr.d
    one = ctx.arr.field.one
    return check_all("bracket_expansions", [
        ("corner value [d,0,0]", table.value(d, 0, 0) == one),
        ("corner value [0,d,0]", table.value(0, d, 0) == one),
        ("corner value [0,0,d]", table.value(0, 0, d) == one),
    ])


def _check_bracket_closed_form(ctx: SuiteContext) -> CheckResult:
    qp = q_parameter(ctx.arr)
    if not qp.usable:
        return CheckResult("bracket_closed_form", True,
                           f"not applicable: q {qp.status}"
                           + ("" if qp.q is None else f" (q = {qp.q})"))
    ok = rlz.brackets_closed_form_check(ctx.arr, qp.q, ctx.table)
    return CheckResult("bracket_closed_form", ok,
                       None if ok else f"mismatch at q = {qp.q}")


_REGISTRY = (
    ("idempotent_algebra", _check_idempotent_algebra),
    ("trace_split_sequences", _check_trace_splits),
    ("dihedral_relations", lambda ctx: d4_relations_check(ctx.arr)),
    ("relative_switching_table",
     lambda ctx: rlz.relative_switching_check(ctx.real)),
    ("trivial_annihilator", lambda ctx: rlz.annihilator_check(ctx.real)),
    ("transport_polynomials", _check_transport_polys),
    ("switching_equals_u_d_of_A",
     lambda ctx: rlz.switching_equals_poly_check(ctx.real, ctx.u_polys)),
    ("switching_characterization",
     lambda ctx: rlz.switching_characterization_check(ctx.real)),
    ("transport_duality",
     lambda ctx: rlz.duality_check(ctx.real, ctx.real_star,
                                   ctx.u_polys, ctx.u_star_polys)),
    ("flag_ladder_images",
     lambda ctx: flg.flag_poly_image_check(ctx.real, ctx.geom)),
    ("mutual_opposition",
     lambda ctx: flg.mutual_opposition_check(ctx.real, ctx.geom)),
    ("decomposition_properties",
     lambda ctx: flg.decomposition_property_check(ctx.real, ctx.geom)),
    ("split_decomposition_components",
     lambda ctx: flg.split_components_check(ctx.real, ctx.geom)),
    ("flag_action", lambda ctx: flg.flag_action_check(ctx.real, ctx.geom)),
    ("decomposition_action",
     lambda ctx: flg.decomposition_action_check(ctx.real, ctx.geom)),
    ("commutator_fixes_flags",
     lambda ctx: flg.commutator_flag_fixing_check(ctx.real, ctx.geom)),
    ("commutator_fixes_decompositions",
     lambda ctx: flg.commutator_decomposition_check(ctx.real, ctx.geom)),
    ("commutator_ladder_identity",
     lambda ctx: flg.commutator_ladder_check(ctx.real)),
    ("commutator_spectrum",
     lambda ctx: flg.commutator_spectrum_check(ctx.real, ctx.geom)),
    ("idempotent_transfer",
     lambda ctx: rlz.idempotent_transfer_check(ctx.real, ctx.ladders)),
    ("idempotent_corner_product",
     lambda ctx: rlz.idempotent_corner_check(ctx.real)),
    ("switching_corner_action",
     lambda ctx: rlz.switching_corner_action_check(ctx.real)),
    ("switching_ladder_action",
     lambda ctx: rlz.switching_ladder_action_check(ctx.real, ctx.ladders)),
    ("switching_tau_expansion",
     lambda ctx: rlz.switching_tau_expansion_check(ctx.real, ctx.ladders,
                                                   ctx.table)),
    ("dual_switching_tau_expansion",
     lambda ctx: rlz.dual_switching_tau_expansion_check(ctx.real, ctx.ladders,
                                                        ctx.table)),
    ("bracket_expansions", _check_bracket_expansions),
    ("bracket_closed_form", _check_bracket_closed_form),
    ("triangular_closed_forms", _check_triangular_closed_forms),
)

CHECK_KEYS = ("parameter_array_valid",) + tuple(k for k, _ in _REGISTRY)


def run_suite(arr: ParameterArray, checks=None) -> TheoremReport:
    """Run every registered check (or the named subset) on one array.

    An invalid array short-circuits: the report then contains only the
    failed validity entry.  The report is deterministic apart from the
    elapsed-time fields.
    """
    t0 = time.perf_counter()
    validity = validate_pa(arr)
    gate = CheckResult(
        "parameter_array_valid", validity.valid,
        None if validity.valid else validity.summary(),
        (time.perf_counter() - t0) * 1000.0)
    entries = [gate]
    if not validity.valid:
        return TheoremReport(tuple(entries))

    selected = None if checks is None else set(checks)
    if selected is not None:
        unknown = selected - set(CHECK_KEYS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")

    ctx = SuiteContext(arr)
    for key, fn in _REGISTRY:
        if selected is not None and key not in selected:
            continue
        t0 = time.perf_counter()
        try:
            result = fn(ctx)
        except Exception as exc:  # a raising check is a failing check
            result = CheckResult(key, False, f"{type(exc).__name__}: {exc}")
        entries.append(result.with_elapsed((time.perf_counter() - t0) * 1000.0))
    return TheoremReport(tuple(entries))
