"""Flag and decomposition geometry of a realized Leonard system.

Four distinguished flags live on K^(d+1): the increasing sums of A's
eigenspaces taken from the front ([0]) or the back ([D]) of the
eigenvalue ordering, and the same two for A* ([0*], [D*]).  Any two of
them are opposite, and each ordered pair (z, w) induces a decomposition
[zw] into lines, the i-th line being the intersection of component i of
[z] with component d-i of [w].

The switching element S is pinned down by this geometry: it fixes [0]
and [D] componentwise and carries [0*] onto [D*]; equivalently it
carries [0*0] onto [D*0] and [0*D] onto [D*D].  The group commutators
of S and S* act diagonally on the four mixed decompositions, with
eigenvalues that are ratios of split-sequence products.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .linalg import Matrix, Subspace, column_space, poly_apply
from .realization import (Realization, prefix_products, suffix_products)
from .report import CheckResult, VerificationError, check_all


class FlagLabel(Enum):
    ZERO = "0"
    D = "D"
    ZERO_STAR = "0*"
    D_STAR = "D*"

    def __repr__(self):
        return f"[{self.value}]"


@dataclass(frozen=True)
class Flag:
    """Nested subspaces; component i has dimension i+1."""

    components: tuple[Subspace, ...]

    def __getitem__(self, i: int) -> Subspace:
        return self.components[i]

    def __len__(self) -> int:
        return len(self.components)

    def image(self, m: Matrix) -> "Flag":
        return Flag(tuple(c.image(m) for c in self.components))


@dataclass(frozen=True)
class Decomposition:
    """Lines summing directly to the whole space."""

    components: tuple[Subspace, ...]

    def __getitem__(self, i: int) -> Subspace:
        return self.components[i]

    def __len__(self) -> int:
        return len(self.components)

    def image(self, m: Matrix) -> "Decomposition":
        return Decomposition(tuple(c.image(m) for c in self.components))

    def inversion(self) -> "Decomposition":
        return Decomposition(self.components[::-1])

    def induced_flag(self) -> Flag:
        partial = self.components[0]
        out = [partial]
        for c in self.components[1:]:
            partial = partial + c
            out.append(partial)
        return Flag(tuple(out))


class FlagGeometry:
    """Cached flags and decompositions of one realization."""

    def __init__(self, real: Realization):
        self.real = real
        self._flags: dict[FlagLabel, Flag] = {}
        self._decompositions: dict[tuple[FlagLabel, FlagLabel], Decomposition] = {}

    def flag(self, z: FlagLabel) -> Flag:
        if z not in self._flags:
            self._flags[z] = flag(self.real, z)
        return self._flags[z]

    def decomposition(self, z: FlagLabel, w: FlagLabel) -> Decomposition:
        key = (z, w)
        if key not in self._decompositions:
            inverse = self._decompositions.get((w, z))
            if inverse is not None:
                self._decompositions[key] = inverse.inversion()
            else:
                self._decompositions[key] = decomposition(
                    self.real, z, w, flags=self._flags_pair(z, w))
        return self._decompositions[key]

    def _flags_pair(self, z: FlagLabel, w: FlagLabel) -> tuple[Flag, Flag]:
        return self.flag(z), self.flag(w)


def _eigenspace_vectors(real: Realization, starred: bool) -> list[tuple]:
    family = real.E_star if starred else real.E
    return [real.eigenspace_vector(family, i) for i in range(real.dim)]


def flag(real: Realization, z: FlagLabel) -> Flag:
    """Component i is the sum of the first i+1 eigenspaces in z's order."""
    starred = z in (FlagLabel.ZERO_STAR, FlagLabel.D_STAR)
    reverse = z in (FlagLabel.D, FlagLabel.D_STAR)
    vectors = _eigenspace_vectors(real, starred)
    if reverse:
        vectors = vectors[::-1]
    components = []
    for i in range(real.dim):
        components.append(
            Subspace.span(real.field, real.dim, vectors[:i + 1]))
    return Flag(tuple(components))


def flag_via_poly_images(real: Realization, z: FlagLabel) -> Flag:
    """The same flag, as column spaces of falling/rising ladder matrices.

    Component i of [0] is the image of eta_{d-i}(A); of [D] the image
    of tau_{d-i}(A); and the starred flags use the starred ladders of
    A*.  This is the independent route used to cross-check ``flag``.
    """
    d = real.d
    ladder, operator = {
        FlagLabel.ZERO: (real.eta, real.A),
        FlagLabel.D: (real.tau, real.A),
        FlagLabel.ZERO_STAR: (real.eta_star, real.A_star),
        FlagLabel.D_STAR: (real.tau_star, real.A_star),
    }[z]
    return Flag(tuple(column_space(poly_apply(ladder[d - i], operator))
                      for i in range(d + 1)))


def decomposition(real: Realization, z: FlagLabel, w: FlagLabel,
                  flags: tuple[Flag, Flag] | None = None) -> Decomposition:
    """The decomposition induced by an ordered pair of distinct flags."""
    if z == w:
        raise ValueError("a decomposition needs two distinct flags")
    if flags is None:
        flags = (flag(real, z), flag(real, w))
    fz, fw = flags
    d = real.d
    components = []
    for i in range(d + 1):
        line = fz[i].intersect(fw[d - i])
        if line.dim != 1:
            raise VerificationError(
                f"component {i} of [{z.value}{w.value}] has dimension {line.dim}")
        components.append(line)
    return Decomposition(tuple(components))


# ---------------------------------------------------------------------------
# Geometry checks.

def flag_poly_image_check(real: Realization,
                          geom: FlagGeometry | None = None) -> CheckResult:
    geom = geom or FlagGeometry(real)
    facts = []
    for z in FlagLabel:
        facts.append((f"[{z.value}] as ladder images",
                      geom.flag(z) == flag_via_poly_images(real, z)))
    return check_all("flag_ladder_images", facts)


def mutual_opposition_check(real: Realization,
                            geom: FlagGeometry | None = None) -> CheckResult:
    """Components of any two distinct flags intersect trivially below level d."""
    geom = geom or FlagGeometry(real)
    labels = list(FlagLabel)
    facts = []
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            fz, fw = geom.flag(labels[a]), geom.flag(labels[b])
            for i in range(real.d + 1):
                for j in range(real.d - i):
                    facts.append((
                        f"[{labels[a].value}]_{i} meets [{labels[b].value}]_{j}",
                        fz[i].intersect(fw[j]).is_zero))
    return check_all("mutual_opposition", facts)


def decomposition_property_check(real: Realization,
                                 geom: FlagGeometry | None = None) -> CheckResult:
    """Inversion symmetry, induced flags, and the two pure decompositions."""
    geom = geom or FlagGeometry(real)
    facts = []
    labels = list(FlagLabel)
    for z in labels:
        for w in labels:
            if z == w:
                continue
            dzw = geom.decomposition(z, w)
            facts.append((f"[{z.value}{w.value}] inverts [{w.value}{z.value}]",
                          dzw == geom.decomposition(w, z).inversion()))
            facts.append((f"[{z.value}{w.value}] induces [{z.value}]",
                          dzw.induced_flag() == geom.flag(z)))
            facts.append((f"[{z.value}{w.value}] inverted induces [{w.value}]",
                          dzw.inversion().induced_flag() == geom.flag(w)))
    eigen = [Subspace.span(real.field, real.dim, [v])
             for v in _eigenspace_vectors(real, starred=False)]
    eigen_star = [Subspace.span(real.field, real.dim, [v])
                  for v in _eigenspace_vectors(real, starred=True)]
    zero_d = geom.decomposition(FlagLabel.ZERO, FlagLabel.D)
    zs_ds = geom.decomposition(FlagLabel.ZERO_STAR, FlagLabel.D_STAR)
    for i in range(real.dim):
        facts.append((f"[0D]_{i} is eigenspace {i} of A",
                      zero_d[i] == eigen[i]))
        facts.append((f"[0*D*]_{i} is eigenspace {i} of A*",
                      zs_ds[i] == eigen_star[i]))
    return check_all("decomposition_properties", facts)


def split_components_check(real: Realization,
                           geom: FlagGeometry | None = None) -> CheckResult:
    """The four mixed decompositions as ladder images of corner eigenspaces.

    Component i of [0*D] is the image of E*_0V under tau_i(A) and also
    the image of E_dV under eta*_{d-i}(A*); the other three mixed
    decompositions have analogous double descriptions, eight polynomial
    descriptions in all.
    """
    geom = geom or FlagGeometry(real)
    d = real.d
    tau_a = [poly_apply(p, real.A) for p in real.tau]
    eta_a = [poly_apply(p, real.A) for p in real.eta]
    taus_as = [poly_apply(p, real.A_star) for p in real.tau_star]
    etas_as = [poly_apply(p, real.A_star) for p in real.eta_star]
    es0 = real.eigenspace_vector(real.E_star, 0)
    esd = real.eigenspace_vector(real.E_star, d)
    e0 = real.eigenspace_vector(real.E, 0)
    ed = real.eigenspace_vector(real.E, d)

    def line(m: Matrix, v: tuple) -> Subspace:
        return Subspace.span(real.field, real.dim, [m.apply(v)])

    cases = [
        (FlagLabel.ZERO_STAR, FlagLabel.D,
         lambda i: line(tau_a[i], es0), lambda i: line(etas_as[d - i], ed)),
        (FlagLabel.D_STAR, FlagLabel.D,
         lambda i: line(tau_a[i], esd), lambda i: line(taus_as[d - i], ed)),
        (FlagLabel.ZERO_STAR, FlagLabel.ZERO,
         lambda i: line(eta_a[i], es0), lambda i: line(etas_as[d - i], e0)),
        (FlagLabel.D_STAR, FlagLabel.ZERO,
         lambda i: line(eta_a[i], esd), lambda i: line(taus_as[d - i], e0)),
    ]
    facts = []
    for z, w, first, second in cases:
        dec = geom.decomposition(z, w)
        name = f"[{z.value}{w.value}]"
        for i in range(d + 1):
            facts.append((f"{name}_{i} first ladder image",
                          dec[i] == first(i)))
            facts.append((f"{name}_{i} second ladder image",
                          dec[i] == second(i)))
    return check_all("split_decomposition_components", facts)


def flag_action_check(real: Realization,
                      geom: FlagGeometry | None = None) -> CheckResult:
    """S fixes [0] and [D] and carries [0*] onto [D*], componentwise.

    A perturbation witness guards the uniqueness direction: adding E_1
    to S keeps the first two properties (any polynomial in A has them)
    but must break the third, since the perturbed element is no longer
    a scalar multiple of S.
    """
    geom = geom or FlagGeometry(real)
    s = real.S
    facts = [
        ("S [0] = [0]", geom.flag(FlagLabel.ZERO).image(s)
         == geom.flag(FlagLabel.ZERO)),
        ("S [D] = [D]", geom.flag(FlagLabel.D).image(s)
         == geom.flag(FlagLabel.D)),
        ("S [0*] = [D*]", geom.flag(FlagLabel.ZERO_STAR).image(s)
         == geom.flag(FlagLabel.D_STAR)),
    ]
    if real.d >= 1:
        perturbed = s + real.E[1]
        facts.append((
            "S + E_1 must fail to map [0*] onto [D*]",
            geom.flag(FlagLabel.ZERO_STAR).image(perturbed)
            != geom.flag(FlagLabel.D_STAR)))
    return check_all("flag_action", facts)


def decomposition_action_check(real: Realization,
                               geom: FlagGeometry | None = None) -> CheckResult:
    """S carries [0*0] onto [D*0] and [0*D] onto [D*D], componentwise."""
    geom = geom or FlagGeometry(real)
    s = real.S
    facts = [
        ("S [0*0] = [D*0]",
         geom.decomposition(FlagLabel.ZERO_STAR, FlagLabel.ZERO).image(s)
         == geom.decomposition(FlagLabel.D_STAR, FlagLabel.ZERO)),
        ("S [0*D] = [D*D]",
         geom.decomposition(FlagLabel.ZERO_STAR, FlagLabel.D).image(s)
         == geom.decomposition(FlagLabel.D_STAR, FlagLabel.D)),
    ]
    return check_all("decomposition_action", facts)


# ---------------------------------------------------------------------------
# Group commutators.

def _commutator_cases(real: Realization):
    """(name, operator, decomposition labels, eigenvalue at i) for all four."""
    field, d = real.field, real.d
    vp = prefix_products(field, real.arr.varphi)
    ph = prefix_products(field, real.arr.phi)
    vp_rev = suffix_products(field, real.arr.varphi)
    ph_rev = suffix_products(field, real.arr.phi)
    s, si = real.S, real.S_inv
    ss, ssi = real.S_star, real.S_star_inv
    return [
        ("S* S^-1 S*^-1 S", ss @ si @ ssi @ s,
         (FlagLabel.ZERO_STAR, FlagLabel.D),
         lambda i: (ph[i] / vp[i]) * (vp[d - i] / ph[d - i])),
        ("S* S S*^-1 S^-1", ss @ s @ ssi @ si,
         (FlagLabel.D_STAR, FlagLabel.D),
         lambda i: (vp_rev[i] / ph_rev[i]) * (ph_rev[d - i] / vp_rev[d - i])),
        ("S*^-1 S^-1 S* S", ssi @ si @ ss @ s,
         (FlagLabel.ZERO_STAR, FlagLabel.ZERO),
         lambda i: (vp[i] / ph[i]) * (ph[d - i] / vp[d - i])),
        ("S*^-1 S S* S^-1", ssi @ s @ ss @ si,
         (FlagLabel.D_STAR, FlagLabel.ZERO),
         lambda i: (ph_rev[i] / vp_rev[i]) * (vp_rev[d - i] / ph_rev[d - i])),
    ]


def commutator_spectrum(real: Realization,
                        geom: FlagGeometry | None = None) -> tuple[tuple, ...]:
    """Eigenvalues of the four S/S* commutators on their decompositions.

    Each commutator fixes every line of its decomposition; the scalar it
    acts by on line i is extracted from the canonical basis vector and
    must match the predicted ratio of split products.  Returns the four
    spectra in the order of the commutator list.
    """
    geom = geom or FlagGeometry(real)
    spectra = []
    for name, op, (z, w), predicted in _commutator_cases(real):
        dec = geom.decomposition(z, w)
        scalars = []
        for i in range(real.dim):
            vec = dec[i].cols[0]
            image = op.apply(vec)
            pivot = next(k for k, e in enumerate(vec) if e)
            scalar = image[pivot] / vec[pivot]
            if tuple(scalar * e for e in vec) != image:
                raise VerificationError(
                    f"{name} does not preserve line {i} of "
                    f"[{z.value}{w.value}]")
            if scalar != predicted(i):
                raise VerificationError(
                    f"{name} acts on line {i} of [{z.value}{w.value}] by "
                    f"{scalar}, expected {predicted(i)}")
            scalars.append(scalar)
        spectra.append(tuple(scalars))
    return tuple(spectra)


def commutator_flag_fixing_check(real: Realization,
                                 geom: FlagGeometry | None = None) -> CheckResult:
    """Each commutator fixes the two flags that built its decomposition."""
    geom = geom or FlagGeometry(real)
    facts = []
    for name, op, (z, w), _ in _commutator_cases(real):
        for label in (z, w):
            facts.append((f"{name} fixes [{label.value}]",
                          geom.flag(label).image(op) == geom.flag(label)))
    return check_all("commutator_fixes_flags", facts)


def commutator_decomposition_check(real: Realization,
                                   geom: FlagGeometry | None = None) -> CheckResult:
    geom = geom or FlagGeometry(real)
    facts = []
    for name, op, (z, w), _ in _commutator_cases(real):
        dec = geom.decomposition(z, w)
        facts.append((f"{name} fixes [{z.value}{w.value}] componentwise",
                      dec.image(op) == dec))
    return check_all("commutator_fixes_decompositions", facts)


def commutator_ladder_check(real: Realization) -> CheckResult:
    """As a matrix identity: the first commutator scales tau_i(A) E*_0.

    S* S^-1 S*^-1 S tau_i(A) E*_0 equals tau_i(A) E*_0 times the
    predicted split-product ratio, for every i.
    """
    field, d = real.field, real.d
    vp = prefix_products(field, real.arr.varphi)
    ph = prefix_products(field, real.arr.phi)
    op = real.S_star @ real.S_inv @ real.S_star_inv @ real.S
    es0 = real.E_star[0]
    facts = []
    for i in range(d + 1):
        base = poly_apply(real.tau[i], real.A) @ es0
        ratio = (ph[i] / vp[i]) * (vp[d - i] / ph[d - i])
        facts.append((f"commutator on tau_{i}(A) E*_0",
                      op @ base == base.scale(ratio)))
    return check_all("commutator_ladder_identity", facts)


def commutator_spectrum_check(real: Realization,
                              geom: FlagGeometry | None = None) -> CheckResult:
    try:
        commutator_spectrum(real, geom)
    except VerificationError as exc:
        return CheckResult("commutator_spectrum", False, str(exc))
    return CheckResult("commutator_spectrum", True)
