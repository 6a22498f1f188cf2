"""Deterministic generation of valid parameter arrays for testing.

Only two eigenvalue shapes are drawn: affine sequences a + b*i and
geometric-affine sequences a + b*q^i with q outside {0, 1, -1}.  Both
satisfy the constant-ratio condition by construction (the three-step
ratio is 3 for affine sequences and q + 1/q + 1 for geometric ones),
which is re-checked, never assumed.  Everything downstream of the
eigenvalues comes from the split solver with a random nonzero seed, so
the generator introduces no structure beyond the validity conditions
themselves.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .fields import Field, PrimeField, QQ
from .parray import (InconsistentSplitsError, ParameterArray,
                     ParameterInputError, solve_splits)

AFFINE = "affine"
GEOMETRIC = "geometric"
SHAPES = (AFFINE, GEOMETRIC)

_RATIONAL_Q_POOL = ("2", "3", "1/2", "1/3", "-2", "-1/2", "3/2", "2/3",
                    "5/2", "-3", "-3/2", "4/3")


def _small_rational(rng: random.Random):
    return QQ(rng.randrange(-9, 10)) / QQ(rng.choice((1, 1, 1, 2, 3)))


def _nonzero(draw, rng: random.Random):
    for _ in range(64):
        x = draw(rng)
        if x:
            return x
    raise RuntimeError("could not draw a nonzero scalar")


def _prime_unit_of_large_order(rng: random.Random, field: PrimeField, d: int):
    p = field.modulus
    for _ in range(256):
        q = rng.randrange(2, p - 1)
        if all(pow(q, k, p) != 1 for k in range(1, d + 1)):
            return field(q)
    raise RuntimeError("could not find a residue of large enough order")


def eigenvalue_sequence(rng: random.Random, field: Field, d: int,
                        shape: str, q=None) -> tuple:
    """One eigenvalue ordering of length d+1 in the requested shape.

    For the geometric shape a ratio may be supplied so that a second
    sequence shares the same constant three-step ratio; the ratio and
    its inverse are interchangeable for that purpose.
    """
    if shape == AFFINE:
        if isinstance(field, PrimeField):
            a = field(rng.randrange(field.modulus))
            b = field(rng.randrange(1, field.modulus))
        else:
            a = _small_rational(rng)
            b = _nonzero(_small_rational, rng)
        return tuple(a + b * field(i) for i in range(d + 1))
    if shape == GEOMETRIC:
        if q is None:
            q = geometric_ratio(rng, field, d)
        if isinstance(field, PrimeField):
            a = field(rng.randrange(field.modulus))
            b = field(rng.randrange(1, field.modulus))
        else:
            a = _small_rational(rng)
            b = _nonzero(_small_rational, rng)
        power = field.one
        out = []
        for _ in range(d + 1):
            out.append(a + b * power)
            power = power * q
        return tuple(out)
    raise ValueError(f"unknown shape {shape!r}")


def geometric_ratio(rng: random.Random, field: Field, d: int):
    if isinstance(field, PrimeField):
        return _prime_unit_of_large_order(rng, field, d)
    return QQ.parse(rng.choice(_RATIONAL_Q_POOL))


def random_valid_array(rng: random.Random, field: Field, d: int,
                       shape: str | None = None,
                       max_tries: int = 200) -> ParameterArray:
    """A valid array of diameter d over the field, deterministic in rng."""
    for _ in range(max_tries):
        pick = shape or rng.choice(SHAPES)
        try:
            if pick == GEOMETRIC and d >= 1:
                q = geometric_ratio(rng, field, d)
                theta = eigenvalue_sequence(rng, field, d, pick, q)
                q_star = q if rng.random() < 0.5 else field.one / q
                theta_star = eigenvalue_sequence(rng, field, d, pick, q_star)
            else:
                theta = eigenvalue_sequence(rng, field, d, AFFINE)
                theta_star = eigenvalue_sequence(rng, field, d, AFFINE)
            if isinstance(field, PrimeField):
                seed = field(rng.randrange(1, field.modulus))
            else:
                seed = _nonzero(_small_rational, rng)
            return solve_splits(field, theta, theta_star, seed)
        except (ParameterInputError, InconsistentSplitsError):
            continue
    raise RuntimeError(f"no valid array found for d={d} over {field!r}")


def standard_corpus(seed: int = 20250810,
                    dims: Iterable[int] = range(1, 9),
                    moduli: Sequence[int | None] = (None, 10007),
                    per_cell: int = 13) -> list[ParameterArray]:
    """The fixed fuzz corpus: per_cell arrays for every (d, field) cell.

    Half of each cell is affine, half geometric.  The default settings
    give 208 arrays over the rationals and GF(10007) combined.
    """
    rng = random.Random(seed)
    out = []
    for d in dims:
        for modulus in moduli:
            field = QQ if modulus is None else PrimeField(modulus)
            for k in range(per_cell):
                shape = AFFINE if k % 2 == 0 else GEOMETRIC
                out.append(random_valid_array(rng, field, d, shape))
    return out
