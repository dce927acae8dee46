"""Exact univariate polynomial arithmetic over the rationals.

Coefficients are `fractions.Fraction` throughout, so every ring operation,
evaluation and root count in this module is exact.  Real-root counting is
done with Sturm chains built from the square-free part, so counts always
mean *distinct* roots.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Union

#: Interval endpoints for :func:`sturm_count` may be these sentinels.
NEG_INF = float("-inf")
POS_INF = float("inf")

Coefficient = Union[Fraction, int, str]
Endpoint = Union[Fraction, int, float]


def _as_fraction(value: Coefficient) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class Polynomial:
    """Dense rational-coefficient polynomial, normalized (no trailing zeros).

    ``coeffs[k]`` is the coefficient of ``x**k``.  The zero polynomial is
    stored as an empty tuple and reports ``degree == -1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coefficient] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: Coefficient = 1) -> "Polynomial":
        if k < 0:
            raise ValueError("exponent must be nonnegative")
        return cls([0] * k + [c])

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- ring operations ------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        return Polynomial(
            x + y for x, y in itertools.zip_longest(a, b, fillvalue=Fraction(0))
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", Coefficient]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            s = _as_fraction(other)
            return Polynomial(c * s for c in self.coeffs)
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def __rmul__(self, other: Coefficient) -> "Polynomial":
        return self * other

    def __divmod__(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Euclidean division: self = q*divisor + r with deg r < deg divisor."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < divisor.degree:
            return Polynomial.zero(), self
        rem = list(self.coeffs)
        dlead = divisor.leading
        ddeg = divisor.degree
        q = [Fraction(0)] * (self.degree - ddeg + 1)
        for k in range(len(q) - 1, -1, -1):
            c = rem[ddeg + k] / dlead
            q[k] = c
            if c == 0:
                continue
            for j, d in enumerate(divisor.coeffs):
                rem[j + k] -= c * d
        return Polynomial(q), Polynomial(rem[:ddeg])

    def __floordiv__(self, divisor: "Polynomial") -> "Polynomial":
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: "Polynomial") -> "Polynomial":
        return divmod(self, divisor)[1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- evaluation and structure ----------------------------------------

    def __call__(self, x: Coefficient) -> Fraction:
        """Exact Horner evaluation."""
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def reflect(self) -> "Polynomial":
        """The polynomial x -> p(-x): flips the sign of odd coefficients."""
        return Polynomial(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def parity_parts(self) -> tuple["Polynomial", "Polynomial"]:
        """Split into (even part, odd part); the two sum back to self."""
        even = Polynomial(c if k % 2 == 0 else 0 for k, c in enumerate(self.coeffs))
        odd = Polynomial(c if k % 2 == 1 else 0 for k, c in enumerate(self.coeffs))
        return even, odd

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ValueError("zero polynomial has no monic associate")
        lead = self.leading
        return Polynomial(c / lead for c in self.coeffs)

    # -- formatting -----------------------------------------------------

    def coefficient_strings(self) -> list[str]:
        """Coefficients a0..am as exact 'num/den' strings (['0'] for zero)."""
        if self.is_zero:
            return ["0"]
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{k}" if mag == 1 else f"{mag}*x^{k}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"


# -- public operation aliases (functional style) --------------------------


def eval_poly(p: Polynomial, x: Coefficient) -> Fraction:
    """Exact value of p at x."""
    return p(x)


def derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def decompose_parity(p: Polynomial) -> tuple[Polynomial, Polynomial]:
    return p.parity_parts()


def reflect(p: Polynomial) -> Polynomial:
    return p.reflect()


# -- gcd / square-free machinery ------------------------------------------


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals (zero if both inputs are zero)."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def square_free_decompose(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's square-free decomposition.

    Returns monic, pairwise-coprime, square-free factors q_i with
    multiplicities i such that p = leading(p) * prod(q_i ** i) exactly.
    Constant factors are dropped; constants decompose to the empty list.
    """
    if p.is_zero:
        raise ValueError("square-free decomposition of the zero polynomial")
    if p.degree <= 0:
        return []
    f = p.monic()
    df = f.derivative()
    a0 = poly_gcd(f, df)
    b = f // a0
    c = df // a0
    out: list[tuple[Polynomial, int]] = []
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        q = poly_gcd(b, d)
        if q.degree > 0:
            out.append((q, i))
        b = b // q
        c = d // q
        i += 1
    return out


def radical(p: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors (square-free part), monic."""
    if p.is_zero:
        raise ValueError("radical of the zero polynomial")
    if p.degree <= 0:
        return Polynomial.one()
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def odd_multiplicity_part(p: Polynomial) -> Polynomial:
    """Monic product of the square-free factors of odd multiplicity.

    Its roots are exactly the points where p changes sign.
    """
    out = Polynomial.one()
    for factor, mult in square_free_decompose(p):
        if mult % 2 == 1:
            out = out * factor
    return out


# -- Sturm chains -----------------------------------------------------------


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


class SturmChain:
    """Sturm chain of a square-free polynomial.

    Built as p0 = s, p1 = s', p_{i+1} = -rem(p_{i-1}, p_i); for square-free
    input the chain ends at a nonzero constant.  Sign-variation counts are
    defined at any rational point and at +/-infinity through leading signs;
    zeros are skipped, which makes V(a) - V(b) count roots in (a, b].
    """

    __slots__ = ("sequence",)

    def __init__(self, squarefree: Polynomial):
        if squarefree.is_zero:
            raise ValueError("Sturm chain of the zero polynomial")
        seq = [squarefree, squarefree.derivative()]
        while not seq[-1].is_zero:
            seq.append(-(seq[-2] % seq[-1]))
        seq.pop()
        self.sequence: tuple[Polynomial, ...] = tuple(seq)

    def _signs_at(self, x: Endpoint) -> list[int]:
        if x == POS_INF:
            return [_sign(q.leading) for q in self.sequence]
        if x == NEG_INF:
            return [
                _sign(q.leading) * (-1 if q.degree % 2 else 1) for q in self.sequence
            ]
        return [_sign(q(Fraction(x))) for q in self.sequence]

    def variations(self, x: Endpoint) -> int:
        """Number of sign changes of the chain at x, zeros skipped."""
        signs = [s for s in self._signs_at(x) if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count_roots(self, lo: Endpoint, hi: Endpoint) -> int:
        return self.variations(lo) - self.variations(hi)


def sturm_count(p: Polynomial, lo: Endpoint, hi: Endpoint) -> int:
    """Distinct real roots of p in the half-open interval (lo, hi].

    Endpoints may be NEG_INF / POS_INF.  The count is taken on the
    square-free part, so multiplicities do not inflate it.
    """
    if p.is_zero:
        raise ValueError("root count of the zero polynomial")
    if not lo < hi:
        raise ValueError("need lo < hi")
    if p.degree == 0:
        return 0
    return SturmChain(radical(p)).count_roots(lo, hi)


def cauchy_bound(p: Polynomial) -> Fraction:
    """1 + max_{k<m} |a_k| / |a_m|; all real roots lie inside (-bound, bound)."""
    if p.is_zero:
        raise ValueError("Cauchy bound of the zero polynomial")
    lead = abs(p.leading)
    lower = [abs(c) for c in p.coeffs[:-1]]
    return 1 + (max(lower) / lead if lower else Fraction(0))
