"""Shared fixtures: named example polynomials and the 200-polynomial corpus."""

import random
from fractions import Fraction

import pytest

from nppreserve import Polynomial, PosMatrixParams, parse_polynomial

# Named inputs reused across the suite.
QUINTIC = parse_polynomial("x^5 - 2x^3 + 2x")
NEG_X = parse_polynomial("-x")
QUARTIC = parse_polynomial("x^4 - x^2 + x + 1")
QUARTIC_EVEN = parse_polynomial("x^4 - x^2 + 1")
QUINTIC_DERIV = parse_polynomial("5x^4 - 6x^2 + 2")
QUARTIC_DERIV = parse_polynomial("4x^3 - 2x + 1")

# Members of the 2x2 preserver class that bypass the fast paths, so they
# exercise the grid refuter and the Bernstein certifier.
CERTIFY_MEMBER = parse_polynomial("x^4 + x^3 - x^2 + x + 1")

CURATED = [
    QUINTIC,
    NEG_X,
    QUARTIC,
    QUARTIC_EVEN,
    QUINTIC_DERIV,
    QUARTIC_DERIV,
    CERTIFY_MEMBER,
    Polynomial(()),
    Polynomial((1,)),
    Polynomial((Fraction(3, 4),)),
    Polynomial((-1,)),
    parse_polynomial("x"),
    parse_polynomial("x^2"),
    parse_polynomial("x^3"),
    parse_polynomial("x^2 + x"),
    parse_polynomial("1 + x + x^2"),
    parse_polynomial("x^2 - 1"),
    parse_polynomial("x^2 - 2x + 1"),
    parse_polynomial("x^5 - x^3 + x"),
    parse_polynomial("x^4 - 2x^2 + 1/2*x + 1"),
    parse_polynomial("-x^2"),
    parse_polynomial("2x^3 - x"),
]


def random_polynomial(rng: random.Random, max_degree: int = 6) -> Polynomial:
    degree = rng.randint(0, max_degree)
    coeffs = [
        Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(degree + 1)
    ]
    return Polynomial(coeffs)


def random_pos_params(rng: random.Random) -> PosMatrixParams:
    """Random (rho, mu, alpha) inside the positivity window."""
    rho = Fraction(rng.randint(1, 64), 16)
    mu = Fraction(rng.randint(-int(rho * 16) + 1, int(rho * 16) - 1), 16)
    if mu < 0:
        lo, hi = -mu / rho, rho / -mu
        alpha = lo + (hi - lo) * Fraction(rng.randint(1, 31), 32)
    else:
        alpha = Fraction(rng.randint(1, 64), 16)
    return PosMatrixParams(rho, mu, alpha)


@pytest.fixture(scope="session")
def corpus200() -> list[Polynomial]:
    """Curated separating examples plus random rational polynomials of degree <= 6."""
    rng = random.Random(20240809)
    polys = list(CURATED)
    while len(polys) < 200:
        polys.append(random_polynomial(rng))
    return polys
