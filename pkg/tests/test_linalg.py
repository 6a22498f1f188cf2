import random

import pytest
from hypothesis import given, strategies as st

from leonard import (GF, QQ, Matrix, Poly, SingularMatrixError, Subspace,
                     expand_in_poly_basis, kernel, mat_inv, poly_apply,
                     subspace_intersect, tau_eta_polys)
from leonard.linalg import DegreeError, column_space, eta_ladder, tau_ladder


def poly(*coeffs):
    return Poly.of(QQ, coeffs)


class TestTauEta:
    def test_empty_products(self):
        tau, eta = tau_eta_polys(QQ, (2, 0, -2), 0)
        assert tau == poly(1) and eta == poly(1)

    def test_degree_two_products(self):
        # (x-2)x = x^2 - 2x and (x+2)x = x^2 + 2x, expanded by hand
        tau, eta = tau_eta_polys(QQ, (2, 0, -2), 2)
        assert tau == poly(0, -2, 1)
        assert eta == poly(0, 2, 1)

    def test_single_factor(self):
        tau, eta = tau_eta_polys(QQ, (1, -1), 1)
        assert tau == poly(-1, 1)
        assert eta == poly(1, 1)

    def test_errors(self):
        with pytest.raises(ValueError):
            tau_eta_polys(QQ, (1, 1), 0)
        with pytest.raises(IndexError):
            tau_eta_polys(QQ, (1, -1), 2)

    def test_ladder_recurrences(self):
        eigs = [QQ(x) for x in (5, 1, -2, 7)]
        d = len(eigs) - 1
        taus = tau_ladder(QQ, eigs)
        etas = eta_ladder(QQ, eigs)
        x = Poly.x(QQ)
        for i in range(d):
            assert taus[i] * (x - Poly.constant(QQ, eigs[i])) == taus[i + 1]
            assert etas[i] * (x - Poly.constant(QQ, eigs[d - i])) == etas[i + 1]
        assert all(p.is_monic and p.degree == i for i, p in enumerate(taus))


class TestPolyApply:
    def test_constant_one_gives_identity(self):
        m = Matrix.build(QQ, [[1, 2], [3, 4]])
        assert poly_apply(poly(1), m) == Matrix.identity(QQ, 2)

    def test_x_gives_matrix(self):
        m = Matrix.build(QQ, [[1, 2], [3, 4]])
        assert poly_apply(Poly.x(QQ), m) == m

    def test_zero_poly(self):
        m = Matrix.build(QQ, [[1, 2], [3, 4]])
        assert poly_apply(Poly.zero(QQ), m) == Matrix.zero(QQ, 2)

    def test_quadratic_against_spectral_switching_oracle(self, K2):
        # The switching element of K2 from the eigenprojector oracle:
        # coefficients (1, -1, 1) on the projectors of A.  x^2 - 2
        # applied to A must be twice that element.
        from leonard import realize

        a = realize(K2).A
        projs = [spectral_projector(a, t) for t in K2.theta]
        s_oracle = projs[0] - projs[1] + projs[2]
        assert poly_apply(poly(-2, 0, 1), a) == s_oracle.scale(2)


def spectral_projector(m, eigenvalue):
    """Rank-one eigenprojector v w^T / (w^T v), independent of any
    polynomial product formula."""
    f = m.field
    shifted = m - Matrix.identity(f, m.nrows).scale(eigenvalue)
    v = kernel(shifted).cols[0]
    w = kernel(shifted.transpose()).cols[0]
    pairing = f.dot(w, v)
    return Matrix.build(f, [[vi * wj / pairing for wj in w] for vi in v])


class TestExpandInPolyBasis:
    def test_worked_example(self):
        # x^2 - 2x = 8*1 - 4*(x+2) + (x^2+2x)
        target = poly(0, -2, 1)
        basis = [poly(1), poly(2, 1), poly(0, 2, 1)]
        assert expand_in_poly_basis(target, basis) == [QQ(8), QQ(-4), QQ(1)]

    def test_unit_vector_on_basis_member(self):
        basis = [poly(1), poly(2, 1), poly(0, 2, 1)]
        assert expand_in_poly_basis(basis[1], basis) == [QQ(0), QQ(1), QQ(0)]

    def test_zero_target(self):
        basis = [poly(1), poly(2, 1)]
        assert expand_in_poly_basis(Poly.zero(QQ), basis) == [QQ(0), QQ(0)]

    def test_non_graded_basis_rejected(self):
        with pytest.raises(DegreeError):
            expand_in_poly_basis(poly(1), [poly(0, 1)])

    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=6))
    def test_resummation(self, coeffs):
        rng = random.Random(len(coeffs))
        basis = []
        for k in range(len(coeffs)):
            lower = [QQ(rng.randrange(-5, 6)) for _ in range(k)]
            basis.append(Poly.of(QQ, lower + [rng.choice((1, 2, -3))]))
        target = Poly.of(QQ, coeffs)
        expansion = expand_in_poly_basis(target, basis)
        total = Poly.zero(QQ)
        for c, b in zip(expansion, basis):
            total = total + b.scale(c)
        assert total == target


def random_matrix(rng, field, n, lo=-9, hi=9):
    return Matrix.build(field,
                        [[rng.randrange(lo, hi + 1) for _ in range(n)]
                         for _ in range(n)])


class TestMatrix:
    def test_inverse_roundtrip_random(self):
        rng = random.Random(5)
        for field in (QQ, GF(10007)):
            for n in range(1, 7):
                for _ in range(8):
                    m = random_matrix(rng, field, n)
                    try:
                        inv = mat_inv(m)
                    except SingularMatrixError:
                        continue
                    assert m @ inv == Matrix.identity(field, n)
                    assert inv @ m == Matrix.identity(field, n)

    def test_identity_inverse(self):
        assert mat_inv(Matrix.identity(QQ, 4)) == Matrix.identity(QQ, 4)

    def test_singular_reported(self):
        with pytest.raises(SingularMatrixError):
            mat_inv(Matrix.build(QQ, [[1, 2], [2, 4]]))

    def test_trace(self, K2):
        from leonard import realize

        assert realize(K2).A.trace() == QQ(0)

    def test_kernel_of_identity_is_zero(self):
        assert kernel(Matrix.identity(QQ, 3)).is_zero


class TestSubspace:
    def test_canonical_form_is_basis_independent(self):
        rng = random.Random(3)
        for field in (QQ, GF(10007)):
            for _ in range(20):
                n = rng.randrange(2, 6)
                k = rng.randrange(1, n + 1)
                vectors = [[field(rng.randrange(-4, 5)) for _ in range(n)]
                           for _ in range(k)]
                u = Subspace.span(field, n, vectors)
                # a second spanning set: random invertible recombinations
                others = []
                for _ in range(k + 2):
                    combo = [field.zero] * n
                    for v in vectors:
                        c = field(rng.randrange(-3, 4))
                        combo = [a + c * b for a, b in zip(combo, v)]
                    others.append(combo)
                w = Subspace.span(field, n, others)
                if w.dim == u.dim:
                    assert w == u
                else:
                    assert w.dim < u.dim

    def test_intersection_hand_case(self):
        u = Subspace.span(QQ, 2, [[1, 0]])
        w = Subspace.span(QQ, 2, [[1, 1]])
        assert subspace_intersect(u, w).is_zero

    def test_intersection_trivial_cases(self):
        u = Subspace.span(QQ, 3, [[1, 0, 2], [0, 1, 1]])
        assert subspace_intersect(u, u) == u
        assert subspace_intersect(Subspace.full(QQ, 3), u) == u

    def test_intersection_dimension_bound(self):
        rng = random.Random(17)
        n = 5
        for _ in range(25):
            u = Subspace.span(QQ, n, [[rng.randrange(-3, 4) for _ in range(n)]
                                      for _ in range(rng.randrange(1, n))])
            w = Subspace.span(QQ, n, [[rng.randrange(-3, 4) for _ in range(n)]
                                      for _ in range(rng.randrange(1, n))])
            meet = u.intersect(w)
            assert meet.dim >= u.dim + w.dim - n
            assert u.contains_subspace(meet) and w.contains_subspace(meet)

    def test_sum_and_contains(self):
        u = Subspace.span(QQ, 3, [[1, 0, 0]])
        w = Subspace.span(QQ, 3, [[0, 1, 0]])
        total = u + w
        assert total.dim == 2
        assert total.contains([5, -3, 0])
        assert not total.contains([0, 0, 1])

    def test_column_space(self):
        m = Matrix.build(QQ, [[1, 2], [2, 4]])
        assert column_space(m).dim == 1
