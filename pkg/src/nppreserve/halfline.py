"""Decide nonnegativity of a rational polynomial on the half line [0, inf).

The decision itself is fully exact (leading sign, value at 0, then Sturm
counting of odd-multiplicity roots on (0, inf)).  Rejections come with a
rational witness point where the polynomial is exactly negative.

For members, :func:`polya_szego_certificate` extracts a numeric
decomposition p = f1^2 + f2^2 + x*(g1^2 + g2^2) whose coefficients are
binary rationals and whose residual error is re-checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import mp, mpf, sqrt as mp_sqrt, polyroots

from .polynomial import (
    POS_INF,
    Polynomial,
    SturmChain,
    cauchy_bound,
    odd_multiplicity_part,
    square_free_decompose,
    sturm_count,
)


class CertificateNotFound(Exception):
    """Raised when the residual tolerance is unreachable at the requested precision."""


@dataclass(frozen=True)
class HalflineVerdict:
    """Outcome of the half-line nonnegativity check.

    ``witness`` is present iff ``member`` is false and then satisfies
    ``witness >= 0`` and ``p(witness) < 0`` exactly.  ``trace`` names the
    sub-check that rejected: 'leading-sign', 'value-at-0' or 'odd-root'.
    """

    member: bool
    witness: Optional[Fraction] = None
    trace: Optional[str] = None


def _point_below_largest_root(p: Polynomial, odd_part: Polynomial) -> Fraction:
    """Rational point 0 < a < (largest root of odd_part) with p(a) < 0, exact.

    Bisects toward the largest sign-change root from below; immediately left
    of it p is strictly negative down to the previous root of p, so the
    shrinking left endpoint eventually lands in that negativity interval.
    """
    chain = SturmChain(odd_part.monic())
    a, b = Fraction(0), cauchy_bound(p)
    while True:
        if a > 0 and p(a) < 0:
            return a
        mid = (a + b) / 2
        if chain.count_roots(mid, b) >= 1:
            a = mid
        else:
            b = mid


def check_nonneg_halfline(p: Polynomial) -> HalflineVerdict:
    """Exact test of p(x) >= 0 for all x >= 0, with witness extraction.

    A sign change on (0, inf) happens exactly at an odd-multiplicity root,
    so after the leading-sign and value-at-0 gates the decision reduces to a
    Sturm count of the odd-multiplicity square-free factors.  A root at 0
    never rejects by itself.
    """
    if p.is_zero:
        return HalflineVerdict(member=True)
    if p.leading < 0:
        # beyond the Cauchy radius the sign equals the leading sign
        return HalflineVerdict(member=False, witness=cauchy_bound(p), trace="leading-sign")
    if p(0) < 0:
        return HalflineVerdict(member=False, witness=Fraction(0), trace="value-at-0")
    odd = odd_multiplicity_part(p)
    if odd.degree < 1 or sturm_count(odd, 0, POS_INF) == 0:
        return HalflineVerdict(member=True)
    return HalflineVerdict(
        member=False, witness=_point_below_largest_root(p, odd), trace="odd-root"
    )


# -- certificate extraction -------------------------------------------------
#
# The set {f1^2 + f2^2 + x*(g1^2 + g2^2)} is the norm form of a quaternion
# algebra over Q[x] with i^2 = -1, j^2 = -x, so it is closed under products.
# Each building block of a member polynomial maps to a quaternion:
#   perfect square F^2        -> (F, 0, 0, 0)
#   a lone factor x           -> (0, 0, 1, 0)          norm x
#   x + s with s > 0          -> (sqrt(s), 0, 1, 0)    norm x + s
#   (x - a)^2 + b^2           -> (x - a, b, 0, 0)
#   positive constant c       -> (sqrt(c), 0, 0, 0)
# Multiplying the quaternions and reading off the components yields the
# decomposition; only root finding and square roots are numeric, and those
# values are rounded to dyadic rationals before the (exact) assembly.

Quaternion = tuple[Polynomial, Polynomial, Polynomial, Polynomial]

_GUARD_BITS = 64


@dataclass(frozen=True)
class PolyaSzegoCertificate:
    """Numeric decomposition p ~ f1^2 + f2^2 + x*(g1^2 + g2^2).

    Coefficients of the four parts are binary rationals; ``residual`` is the
    exactly-computed max-norm of p minus the reconstruction.
    """

    f1: Polynomial
    f2: Polynomial
    g1: Polynomial
    g2: Polynomial
    residual: Fraction
    precision_bits: int

    def reconstruction(self) -> Polynomial:
        x = Polynomial.x()
        return (self.f1 * self.f1 + self.f2 * self.f2) + x * (
            self.g1 * self.g1 + self.g2 * self.g2
        )


def _qmul(q1: Quaternion, q2: Quaternion) -> Quaternion:
    u, v, w, t = q1
    uu, vv, ww, tt = q2
    x = Polynomial.x()
    return (
        u * uu - v * vv - x * (w * ww) - x * (t * tt),
        u * vv + v * uu + x * (w * tt - t * ww),
        u * ww + w * uu - v * tt + t * vv,
        u * tt + t * uu + v * ww - w * vv,
    )


def _dyadic(value, bits: int) -> Fraction:
    """Round an mpmath real to the nearest multiple of 2**-bits."""
    scaled = mpf(value) * (1 << bits)
    return Fraction(int(mp.nint(scaled)), 1 << bits)


def _round_poly(p: Polynomial, bits: int) -> Polynomial:
    grid = 1 << bits
    return Polynomial(Fraction(round(c * grid), grid) for c in p.coeffs)


def _poly_power(p: Polynomial, n: int) -> Polynomial:
    out = Polynomial.one()
    for _ in range(n):
        out = out * p
    return out


def _squarefree_factor_quaternions(factor: Polynomial, bits: int) -> list[Quaternion]:
    """Quaternions for one odd-multiplicity square-free factor of a member.

    Such a factor has no positive real roots; a root at 0 is split off
    exactly and the remaining roots are located numerically.
    """
    quats: list[Quaternion] = []
    u = factor.monic()
    if u.coefficient(0) == 0:
        quats.append((Polynomial.zero(), Polynomial.zero(), Polynomial.one(), Polynomial.zero()))
        u = u // Polynomial.x()
    if u.degree < 1:
        return quats
    coeffs_desc = [mpf(c.numerator) / mpf(c.denominator) for c in reversed(u.coeffs)]
    roots = polyroots(coeffs_desc, maxsteps=200, extraprec=96)
    im_tol = mpf(2) ** (-(bits // 2))
    n_real = 0
    n_pairs = 0
    for z in roots:
        if abs(z.imag) <= im_tol:
            if z.real > im_tol:
                raise CertificateNotFound(
                    "unexpected positive real root in an odd-multiplicity factor"
                )
            n_real += 1
            size = -z.real
            root_s = _dyadic(mp_sqrt(size if size > 0 else mpf(0)), bits)
            quats.append(
                (Polynomial((root_s,)), Polynomial.zero(), Polynomial.one(), Polynomial.zero())
            )
        elif z.imag > 0:
            n_pairs += 1
            alpha = _dyadic(z.real, bits)
            beta = _dyadic(z.imag, bits)
            quats.append(
                (Polynomial((-alpha, 1)), Polynomial((beta,)), Polynomial.zero(), Polynomial.zero())
            )
    if n_real + 2 * n_pairs != u.degree:
        raise CertificateNotFound("root classification failed; retry with more bits")
    return quats


def polya_szego_certificate(p: Polynomial, precision_bits: int = 128) -> PolyaSzegoCertificate:
    """Decompose a half-line-nonnegative p as f1^2 + f2^2 + x*(g1^2 + g2^2).

    Roots are found to ``precision_bits`` plus guard bits, every assembled
    coefficient is a binary rational, and the certificate is accepted only
    when the exactly-computed residual is at most
    2**(8 - precision_bits) * max|a_k|.

    Raises CertificateNotFound when that tolerance is unreachable at the
    requested precision, and ValueError for the zero polynomial or inputs
    that are not nonnegative on the half line.
    """
    if p.is_zero:
        raise ValueError("no certificate for the zero polynomial")
    if not check_nonneg_halfline(p).member:
        raise ValueError("polynomial is negative somewhere on [0, inf)")
    if precision_bits < 16:
        raise ValueError("precision_bits too small to be meaningful")
    work_bits = precision_bits + _GUARD_BITS

    with mp.workprec(work_bits + 64):
        q: Quaternion = (
            Polynomial.one(),
            Polynomial.zero(),
            Polynomial.zero(),
            Polynomial.zero(),
        )
        for factor, mult in square_free_decompose(p):
            half, odd = divmod(mult, 2)
            if half:
                q = _qmul(q, (_poly_power(factor, half), Polynomial.zero(),
                              Polynomial.zero(), Polynomial.zero()))
            if odd:
                for block in _squarefree_factor_quaternions(factor, work_bits):
                    q = _qmul(q, block)
        lead = p.leading  # positive for members of degree >= 1, >= 0 for constants
        root_lead = _dyadic(mp_sqrt(mpf(lead.numerator) / mpf(lead.denominator)), work_bits)
        q = _qmul(q, (Polynomial((root_lead,)), Polynomial.zero(),
                      Polynomial.zero(), Polynomial.zero()))

    f1, f2, g1, g2 = (_round_poly(component, precision_bits) for component in q)
    x = Polynomial.x()
    delta = p - (f1 * f1 + f2 * f2) - x * (g1 * g1 + g2 * g2)
    residual = max((abs(c) for c in delta.coeffs), default=Fraction(0))
    tolerance = Fraction(2) ** (8 - precision_bits) * max(abs(c) for c in p.coeffs)
    if residual > tolerance:
        raise CertificateNotFound(
            f"residual {residual} exceeds tolerance {tolerance}; retry with more bits"
        )
    return PolyaSzegoCertificate(
        f1=f1, f2=f2, g1=g1, g2=g2, residual=residual, precision_bits=precision_bits
    )
