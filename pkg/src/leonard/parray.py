"""Parameter arrays: validity, the dihedral symmetry group, generation.

A parameter array is the full isomorphism invariant of a Leonard system:
two eigenvalue orderings (theta, theta_star) of length d+1 and two split
sequences (varphi, phi) of length d.  Five arithmetic conditions, called
PA1..PA5 here, characterize exactly which arrays arise from Leonard
systems:

  PA1  every split entry is nonzero;
  PA2  each eigenvalue ordering has mutually distinct entries;
  PA3  varphi_i is determined by phi_1 and the eigenvalues;
  PA4  phi_i is determined by varphi_1 and the eigenvalues;
  PA5  the three-step difference ratios of both eigenvalue orderings
       agree and are constant in i (vacuous when d < 3).

The eight-element dihedral group acts on arrays through three
involutions: ``star`` swaps the two eigenvalue orderings, ``down``
reverses theta_star and ``Down`` reverses theta, with the split
sequences following along.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import Field, PrimeField, Scalar


class ParameterInputError(ValueError):
    """Inputs to a generator violate its preconditions."""


class InvalidParameterArrayError(ValueError):
    """An operation that requires a valid array received an invalid one."""

    def __init__(self, report: "ValidityReport"):
        self.report = report
        super().__init__(f"parameter array is invalid: {report.summary()}")


class InconsistentSplitsError(ValueError):
    """The split solver produced an array that fails validation."""

    def __init__(self, report: "ValidityReport"):
        self.report = report
        self.condition = report.first_failing()
        super().__init__(f"assembled array is inconsistent: {report.summary()}")


_CONDITIONS = ("PA1", "PA2", "PA3", "PA4", "PA5")


@dataclass(frozen=True)
class ValidityReport:
    """Per-condition outcome: None means pass, an int is the first bad index."""

    pa1: int | None
    pa2: int | None
    pa3: int | None
    pa4: int | None
    pa5: int | None

    @property
    def valid(self) -> bool:
        return all(getattr(self, c.lower()) is None for c in _CONDITIONS)

    def first_failing(self) -> str | None:
        for c in _CONDITIONS:
            if getattr(self, c.lower()) is not None:
                return c
        return None

    def summary(self) -> str:
        bad = [f"{c} at index {getattr(self, c.lower())}"
               for c in _CONDITIONS if getattr(self, c.lower()) is not None]
        return "valid" if not bad else "; ".join(bad)

    def to_json(self) -> dict:
        conditions = {}
        for c in _CONDITIONS:
            idx = getattr(self, c.lower())
            conditions[c] = ({"ok": True} if idx is None
                             else {"ok": False, "index": idx})
        return {"valid": self.valid, "conditions": conditions}


@dataclass(frozen=True)
class ParameterArray:
    """The data (theta; theta_star; varphi; phi) of diameter d."""

    field: Field
    d: int
    theta: tuple
    theta_star: tuple
    varphi: tuple
    phi: tuple

    @classmethod
    def of(cls, field: Field, theta: Sequence, theta_star: Sequence,
           varphi: Sequence, phi: Sequence) -> "ParameterArray":
        theta = tuple(field(x) for x in theta)
        theta_star = tuple(field(x) for x in theta_star)
        varphi = tuple(field(x) for x in varphi)
        phi = tuple(field(x) for x in phi)
        if not theta:
            raise ParameterInputError("theta must have at least one entry")
        d = len(theta) - 1
        if len(theta_star) != d + 1:
            raise ParameterInputError(
                f"theta_star has {len(theta_star)} entries, expected {d + 1}")
        if len(varphi) != d or len(phi) != d:
            raise ParameterInputError(
                f"split sequences must have {d} entries")
        if isinstance(field, PrimeField) and field.modulus <= d + 1:
            raise ParameterInputError(
                f"modulus {field.modulus} must exceed d+1 = {d + 1}")
        return cls(field, d, theta, theta_star, varphi, phi)


def _first_duplicate(values: Sequence) -> int | None:
    seen = set()
    for i, v in enumerate(values):
        if v in seen:
            return i
        seen.add(v)
    return None


def validate_pa(arr: ParameterArray) -> ValidityReport:
    """Check PA1..PA5 exactly; record the first failing index of each."""
    d = arr.d
    field = arr.field

    pa1 = next((i for i in range(1, d + 1)
                if not arr.varphi[i - 1] or not arr.phi[i - 1]), None)

    dup_theta = _first_duplicate(arr.theta)
    dup_star = _first_duplicate(arr.theta_star)
    pa2 = min((x for x in (dup_theta, dup_star) if x is not None), default=None)

    pa3 = pa4 = None
    if d >= 1:
        denom = arr.theta[0] - arr.theta[d]
        if not denom:
            # Already a PA2 failure; the PA3/PA4 displays divide by it.
            pa3 = pa4 = 1
        else:
            partial = field.zero
            for i in range(1, d + 1):
                partial = partial + (arr.theta[i - 1] - arr.theta[d - i + 1]) / denom
                want3 = (arr.phi[0] * partial
                         + (arr.theta_star[i] - arr.theta_star[0])
                         * (arr.theta[i - 1] - arr.theta[d]))
                if pa3 is None and arr.varphi[i - 1] != want3:
                    pa3 = i
                want4 = (arr.varphi[0] * partial
                         + (arr.theta_star[i] - arr.theta_star[0])
                         * (arr.theta[d - i + 1] - arr.theta[0]))
                if pa4 is None and arr.phi[i - 1] != want4:
                    pa4 = i

    pa5 = _check_beta_ratios(arr.theta, arr.theta_star)

    return ValidityReport(pa1, pa2, pa3, pa4, pa5)


def _check_beta_ratios(theta: tuple, theta_star: tuple) -> int | None:
    """First index where the three-step ratios disagree, None if constant."""
    d = len(theta) - 1
    common = None
    for i in range(2, d):
        for seq in (theta, theta_star):
            denom = seq[i - 1] - seq[i]
            if not denom:
                return i
            ratio = (seq[i - 2] - seq[i + 1]) / denom
            if common is None:
                common = ratio
            elif ratio != common:
                return i
    return None


def require_valid(arr: ParameterArray) -> ValidityReport:
    report = validate_pa(arr)
    if not report.valid:
        raise InvalidParameterArrayError(report)
    return report


# ---------------------------------------------------------------------------
# The dihedral group action.

STAR = "star"
DOWN = "down"
DOWNDOWN = "Down"
_GENERATORS = (STAR, DOWN, DOWNDOWN)

# The action is determined by whether the eigenvalue orderings are
# swapped and which of the two current orderings are reversed; this
# three-bit state is a faithful copy of the eight-element group.
_CANONICAL_WORDS = {
    (0, 0, 0): (),
    (0, 0, 1): (DOWN,),
    (0, 1, 0): (DOWNDOWN,),
    (0, 1, 1): (DOWN, DOWNDOWN),
    (1, 0, 0): (STAR,),
    (1, 1, 0): (DOWN, STAR),
    (1, 0, 1): (DOWNDOWN, STAR),
    (1, 1, 1): (DOWN, DOWNDOWN, STAR),
}


def _step_state(state: tuple[int, int, int], gen: str) -> tuple[int, int, int]:
    swapped, rev_first, rev_second = state
    if gen == STAR:
        return (1 - swapped, rev_second, rev_first)
    if gen == DOWN:
        return (swapped, rev_first, 1 - rev_second)
    if gen == DOWNDOWN:
        return (swapped, 1 - rev_first, rev_second)
    raise ValueError(f"unknown generator {gen!r}")


@dataclass(frozen=True)
class D4Element:
    """A word over (star, down, Down), applied left to right.

    Equality and hashing use the canonical reduced word, so two words
    that act identically compare equal.
    """

    word: tuple[str, ...]

    @classmethod
    def of(cls, *generators: str) -> "D4Element":
        for g in generators:
            if g not in _GENERATORS:
                raise ValueError(f"unknown generator {g!r}")
        return cls(tuple(generators))

    @classmethod
    def identity(cls) -> "D4Element":
        return cls(())

    @classmethod
    def all_elements(cls) -> tuple["D4Element", ...]:
        return tuple(cls(w) for w in _CANONICAL_WORDS.values())

    def state(self) -> tuple[int, int, int]:
        st = (0, 0, 0)
        for g in self.word:
            st = _step_state(st, g)
        return st

    @property
    def canonical_word(self) -> tuple[str, ...]:
        return _CANONICAL_WORDS[self.state()]

    def __mul__(self, other: "D4Element") -> "D4Element":
        """Composition: self applied first, then other."""
        return D4Element(self.word + other.word)

    def __eq__(self, other):
        return isinstance(other, D4Element) and self.state() == other.state()

    def __hash__(self):
        return hash(self.state())

    def __repr__(self):
        return "D4(" + ("identity" if not self.canonical_word
                        else ",".join(self.canonical_word)) + ")"


D4_IDENTITY = D4Element.identity()
D4_ALL = D4Element.all_elements()


def _apply_generator(gen: str, arr: ParameterArray) -> ParameterArray:
    t, ts = arr.theta, arr.theta_star
    vp, ph = arr.varphi, arr.phi
    if gen == STAR:
        return ParameterArray(arr.field, arr.d, ts, t, vp, ph[::-1])
    if gen == DOWN:
        return ParameterArray(arr.field, arr.d, t, ts[::-1], ph[::-1], vp[::-1])
    if gen == DOWNDOWN:
        return ParameterArray(arr.field, arr.d, t[::-1], ts, ph, vp)
    raise ValueError(f"unknown generator {gen!r}")


def d4_apply(g: D4Element, arr: ParameterArray, *,
             check: bool = True) -> ParameterArray:
    """Transform a valid array by a group element, generator by generator."""
    if check:
        require_valid(arr)
    for gen in g.word:
        arr = _apply_generator(gen, arr)
    return arr


def d4_orbit(arr: ParameterArray) -> set[ParameterArray]:
    return {d4_apply(g, arr) for g in D4_ALL}


def d4_relations_check(arr: ParameterArray):
    """The defining group relations, acting extensionally on one array.

    Each generator is an involution, and the braid-style relations
    (Down then star) = (star then down), (down then star) = (star then
    Down), (down then Down) = (Down then down) hold as transformations.
    Also checks that every relative is again valid and that the orbit
    size divides 8.
    """
    from .report import check_all

    def word(*gens: str) -> ParameterArray:
        return d4_apply(D4Element.of(*gens), arr)

    facts = [
        ("star is an involution", word(STAR, STAR) == arr),
        ("down is an involution", word(DOWN, DOWN) == arr),
        ("Down is an involution", word(DOWNDOWN, DOWNDOWN) == arr),
        ("Down,star = star,down",
         word(DOWNDOWN, STAR) == word(STAR, DOWN)),
        ("down,star = star,Down",
         word(DOWN, STAR) == word(STAR, DOWNDOWN)),
        ("down,Down = Down,down",
         word(DOWN, DOWNDOWN) == word(DOWNDOWN, DOWN)),
    ]
    for g in D4_ALL:
        facts.append((f"relative {g!r} is valid",
                      validate_pa(d4_apply(g, arr)).valid))
    facts.append(("orbit size divides 8", 8 % len(d4_orbit(arr)) == 0))
    return check_all("dihedral_relations", facts)


# ---------------------------------------------------------------------------
# Generation from eigenvalue data.

def solve_splits(field: Field, theta: Sequence, theta_star: Sequence,
                 phi1_seed) -> ParameterArray:
    """Build the unique array with the given eigenvalues and phi_1.

    PA3 determines every varphi_i from phi_1, and PA4 then determines
    every phi_i from varphi_1, so the eigenvalue orderings plus one
    nonzero seed pin the whole array.  The assembled array is
    re-validated; a failure (only PA1 can fail when the preconditions
    hold) raises :class:`InconsistentSplitsError`.
    """
    theta = tuple(field(x) for x in theta)
    theta_star = tuple(field(x) for x in theta_star)
    if len(theta) != len(theta_star) or not theta:
        raise ParameterInputError("eigenvalue lists must have equal length >= 1")
    d = len(theta) - 1
    if d == 0:
        return ParameterArray.of(field, theta, theta_star, (), ())

    seed = field(phi1_seed)
    if not seed:
        raise ParameterInputError("phi_1 seed must be nonzero")
    if _first_duplicate(theta) is not None or _first_duplicate(theta_star) is not None:
        raise ParameterInputError("eigenvalues must be mutually distinct")
    if _check_beta_ratios(theta, theta_star) is not None:
        raise ParameterInputError(
            "eigenvalue orderings do not share a constant three-step ratio")

    denom = theta[0] - theta[d]
    partial = field.zero
    partials = []
    for i in range(1, d + 1):
        partial = partial + (theta[i - 1] - theta[d - i + 1]) / denom
        partials.append(partial)

    varphi = [seed * partials[i - 1]
              + (theta_star[i] - theta_star[0]) * (theta[i - 1] - theta[d])
              for i in range(1, d + 1)]
    phi = [varphi[0] * partials[i - 1]
           + (theta_star[i] - theta_star[0]) * (theta[d - i + 1] - theta[0])
           for i in range(1, d + 1)]
    phi[0] = seed

    arr = ParameterArray.of(field, theta, theta_star, varphi, phi)
    report = validate_pa(arr)
    if not report.valid:
        raise InconsistentSplitsError(report)
    return arr


# ---------------------------------------------------------------------------
# The q parameter.

UNDETERMINED = "undetermined"
VALUE = "value"
NOT_IN_FIELD = "not-in-field"


@dataclass(frozen=True)
class QParameter:
    status: str
    q: Scalar | None = None

    @property
    def usable(self) -> bool:
        """True when q exists in the field and is not 0, 1 or -1."""
        if self.status != VALUE:
            return False
        return self.q != 0 and self.q != 1 and self.q != -1

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.q is not None:
            out["q"] = str(self.q)
        return out


def q_parameter(arr: ParameterArray) -> QParameter:
    """Solve q + 1/q + 1 = common three-step ratio, if possible.

    For d <= 2 the ratio condition is vacuous and q is undetermined.
    The two roots of the quadratic are q and 1/q; every derived
    quantity is invariant under that swap, so the returned root is just
    a canonical representative (the larger root over the rationals, the
    smaller residue over a prime field).
    """
    require_valid(arr)
    if arr.d <= 2:
        return QParameter(UNDETERMINED)
    field = arr.field
    c = (arr.theta[0] - arr.theta[3]) / (arr.theta[1] - arr.theta[2])
    b = c - field.one  # q + 1/q
    disc = b * b - 4 * field.one
    root = field.sqrt(disc)
    if root is None:
        return QParameter(NOT_IN_FIELD)
    two_inv = field.one / field(2)
    q1 = (b + root) * two_inv
    q2 = (b - root) * two_inv
    if field.kind == "prime":
        q = q1 if q1.value <= q2.value else q2
    else:
        q = max(q1, q2)
    return QParameter(VALUE, q)
