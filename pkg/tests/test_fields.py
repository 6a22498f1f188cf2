import pytest
from hypothesis import given, strategies as st

from leonard import GF, QQ, FieldDegeneracyError, ModularInteger, is_prime
from leonard.fields import field_from_json


class TestRationals:
    def test_parse_format_roundtrip(self):
        for text in ("0", "7", "-7", "3/4", "-3/4", "22/7"):
            assert QQ.format(QQ.parse(text)) == text

    def test_normalization(self):
        assert QQ.format(QQ(6) / QQ(-8)) == "-3/4"
        assert QQ.format(QQ(4) / QQ(2)) == "2"

    def test_division_by_zero_is_reported(self):
        with pytest.raises(ZeroDivisionError):
            QQ(1) / QQ(0)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            QQ(0.5)

    def test_sqrt(self):
        assert QQ.sqrt(QQ.parse("9/4")) == QQ.parse("3/2")
        assert QQ.sqrt(QQ(0)) == 0
        assert QQ.sqrt(QQ(2)) is None
        assert QQ.sqrt(QQ(-4)) is None

    @given(st.integers(-50, 50), st.integers(1, 30))
    def test_sqrt_of_square(self, num, den):
        x = QQ(num) / QQ(den)
        assert QQ.sqrt(x * x) == abs(x)


class TestPrimeField:
    def test_modulus_must_be_prime(self):
        with pytest.raises(ValueError):
            GF(10)
        with pytest.raises(ValueError):
            GF(1)

    def test_arithmetic(self):
        f = GF(7)
        assert f(3) + f(5) == f(1)
        assert f(3) * f(5) == f(1)
        assert f(3) - 5 == f(5)
        assert 1 / f(3) == f(5)
        assert f(3) ** -1 == f(5)
        assert -f(3) == f(4)

    def test_zero_division_degenerates(self):
        f = GF(10007)
        with pytest.raises(FieldDegeneracyError):
            f(1) / f(0)
        with pytest.raises(FieldDegeneracyError):
            f(0) ** -1

    def test_mixed_moduli_rejected(self):
        with pytest.raises(ValueError):
            GF(7)(1) + GF(11)(1)

    def test_parse_accepts_fraction_strings(self):
        f = GF(7)
        assert f.parse("3/5") == f(3) / f(5)
        assert f.parse("-2") == f(5)

    def test_sqrt_both_residue_classes(self):
        # 10007 = 3 (mod 4), 10009 = 1 (mod 4): both Tonelli branches.
        for p in (10007, 10009):
            f = GF(p)
            for a in (2, 3, 5, 1234):
                root = f.sqrt(f(a) * f(a))
                assert root is not None and root * root == f(a) * f(a)

    def test_sqrt_nonresidue(self):
        f = GF(10007)
        hits = sum(f.sqrt(f(a)) is not None for a in range(1, 200))
        assert 0 < hits < 199  # both residues and non-residues occur

    @given(st.integers(0, 10006), st.integers(1, 10006))
    def test_division_inverts_multiplication(self, a, b):
        f = GF(10007)
        assert (f(a) / f(b)) * f(b) == f(a)


def test_is_prime_small_and_large():
    assert is_prime(2) and is_prime(10007) and is_prime(10009)
    assert not is_prime(1) and not is_prime(10011)


def test_field_json_roundtrip():
    assert field_from_json(QQ.to_json()) == QQ
    assert field_from_json(GF(10007).to_json()) == GF(10007)
    with pytest.raises(ValueError):
        field_from_json({"kind": "galois"})


def test_modular_integer_strings():
    x = ModularInteger(-3, 7)
    assert str(x) == "4"
    assert GF(7).format(x) == "4"
