"""Exact 2x2 matrix evaluation and randomized falsification.

Everything here is exact rational arithmetic: matrix products, polynomial
evaluation of matrices by Horner, the parametrized positive-matrix
generator with known spectrum, and the Monte-Carlo search for a
nonnegative matrix whose image under p has a negative entry.  Randomness
is a counter-based generator keyed by (seed, trial index), so runs are
reproducible and trials are independent.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .polynomial import Polynomial, cauchy_bound

Rational = Union[Fraction, int, str]


@dataclass(frozen=True)
class Matrix2:
    """2x2 matrix with exact rational entries."""

    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def identity(cls) -> "Matrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def zero(cls) -> "Matrix2":
        return cls(0, 0, 0, 0)

    @classmethod
    def scalar(cls, c: Rational) -> "Matrix2":
        return cls(c, 0, 0, c)

    @property
    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a11, self.a12, self.a21, self.a22)

    def rows(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.a11, self.a12), (self.a21, self.a22))

    @property
    def is_nonneg(self) -> bool:
        return all(e >= 0 for e in self.entries)

    @property
    def is_positive(self) -> bool:
        return all(e > 0 for e in self.entries)

    @property
    def min_entry(self) -> Fraction:
        return min(self.entries)

    def trace(self) -> Fraction:
        return self.a11 + self.a22

    def det(self) -> Fraction:
        return self.a11 * self.a22 - self.a12 * self.a21

    def __add__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a11 + other.a11,
            self.a12 + other.a12,
            self.a21 + other.a21,
            self.a22 + other.a22,
        )

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def __str__(self) -> str:
        return f"[[{self.a11}, {self.a12}], [{self.a21}, {self.a22}]]"


def horner_matrix_eval(p: Polynomial, a: Matrix2) -> Matrix2:
    """Exact p(A) by Horner, with the identity standing in for the constant term."""
    result = Matrix2.zero()
    for c in reversed(p.coeffs):
        result = result @ a + Matrix2.scalar(c)
    return result


@dataclass(frozen=True)
class PosMatrixParams:
    """Spectrum-and-shape parameters (rho, mu, alpha) of a positive matrix.

    Requires rho > |mu| and alpha > 0; when mu < 0 the positivity window
    |mu|/rho < alpha < rho/|mu| is enforced so the generated matrix is
    entrywise positive.
    """

    rho: Fraction
    mu: Fraction
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rho", Fraction(self.rho))
        object.__setattr__(self, "mu", Fraction(self.mu))
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if not self.rho > 0:
            raise ValueError("rho must be positive")
        if not abs(self.mu) < self.rho:
            raise ValueError("need rho > |mu|")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.mu < 0:
            lo, hi = -self.mu / self.rho, self.rho / -self.mu
            if not lo < self.alpha < hi:
                raise ValueError("alpha outside the positivity window")


def _shape_matrix(alpha: Fraction, top: Fraction, bottom: Fraction,
                  off: Fraction) -> Matrix2:
    scale = Fraction(1, 1) / (1 + alpha)
    return Matrix2(scale * top, scale * off, scale * alpha * off, scale * bottom)


def posmatrix_generate(params: PosMatrixParams) -> Matrix2:
    """Positive matrix with eigenvalues {rho, mu}:

    B = 1/(1+alpha) * [[alpha*rho + mu, rho - mu], [alpha*(rho - mu), alpha*mu + rho]]
    """
    rho, mu, alpha = params.rho, params.mu, params.alpha
    return _shape_matrix(alpha, alpha * rho + mu, alpha * mu + rho, rho - mu)


def closed_form_image(p: Polynomial, params: PosMatrixParams) -> Matrix2:
    """Image p(B) of the generated matrix, written directly in p(rho), p(mu)."""
    prho, pmu = p(params.rho), p(params.mu)
    return _shape_matrix(params.alpha, params.alpha * prho + pmu,
                         params.alpha * pmu + prho, prho - pmu)


def scramble_similarity(a: Matrix2, d1: Rational, d2: Rational, swap: bool) -> Matrix2:
    """Conjugate by diag(d1, d2) then optionally by the swap permutation.

    Both conjugations preserve entrywise nonnegativity of p(A), so verdicts
    must be invariant under this scrambling.
    """
    d1, d2 = Fraction(d1), Fraction(d2)
    if not (d1 > 0 and d2 > 0):
        raise ValueError("diagonal entries must be positive")
    m = Matrix2(a.a11, a.a12 * d2 / d1, a.a21 * d1 / d2, a.a22)
    if swap:
        m = Matrix2(m.a22, m.a21, m.a12, m.a11)
    return m


class _TrialRandom:
    """Counter-based pseudo-random stream keyed by (seed, trial)."""

    __slots__ = ("_prefix", "_counter")

    def __init__(self, seed: int, trial: int):
        self._prefix = f"nppreserve:{seed}:{trial}:"
        self._counter = 0

    def randint(self, lo: int, hi: int) -> int:
        self._counter += 1
        digest = hashlib.sha256(
            (self._prefix + str(self._counter)).encode()
        ).digest()
        return lo + int.from_bytes(digest, "big") % (hi - lo + 1)


_DYADIC = 64  # denominator of all sampled rationals


def falsify_random(p: Polynomial, trials: int, seed: int = 0) -> Optional[Matrix2]:
    """Search for a nonnegative matrix A with some entry of p(A) negative.

    Trials rotate round-robin through three families: (a) uniform dyadic
    entries, (b) symmetric circulants parametrized by eigenvalues
    (rho, mu) with rho >= |mu|, and (c) the [[0, rho], [mu, rho - mu]]
    template over 0 < mu <= rho, each optionally scrambled by a similarity.
    The structured families make violations of the defining property easy
    to hit; returns the first (lowest trial index) violating matrix, or
    None.  Deterministic given the seed.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    span = int(cauchy_bound(p)) + 1 if not p.is_zero else 1
    limit = span * _DYADIC
    for trial in range(trials):
        rng = _TrialRandom(seed, trial)
        family = trial % 3
        if family == 0:
            a = Matrix2(*(Fraction(rng.randint(0, limit), _DYADIC) for _ in range(4)))
        elif family == 1:
            i = rng.randint(0, limit)
            rho = Fraction(i, _DYADIC)
            mu = Fraction(rng.randint(-i, i), _DYADIC)
            a = Matrix2((rho + mu) / 2, (rho - mu) / 2, (rho - mu) / 2, (rho + mu) / 2)
        else:
            i = rng.randint(1, limit)
            rho = Fraction(i, _DYADIC)
            mu = Fraction(rng.randint(1, i), _DYADIC)
            a = Matrix2(0, rho, mu, rho - mu)
        if rng.randint(0, 1):
            d1 = 1 + Fraction(rng.randint(0, 15), 16)
            d2 = 1 + Fraction(rng.randint(0, 15), 16)
            a = scramble_similarity(a, d1, d2, swap=bool(rng.randint(0, 1)))
        if not a.is_nonneg:
            continue
        if horner_matrix_eval(p, a).min_entry < 0:
            return a
    return None
