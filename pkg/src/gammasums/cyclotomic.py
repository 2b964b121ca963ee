"""Exact arithmetic in the cyclotomic field Q(zeta_N).

A value is an integer coordinate vector over the power basis
1, z, ..., z^(phi(N)-1) with z = exp(2*pi*i/N), together with a single
positive denominator.  Vectors are kept reduced modulo the N-th cyclotomic
polynomial and normalized so that gcd of all numerators and the denominator
is 1, which makes representations canonical: a value is zero exactly when
every numerator is zero.  Ring operations, equality and conjugation are
exact; a complex embedding is provided for floating-point magnitude checks.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _int_poly_div_exact(num, den):
    """Divide integer polynomials (low degree first), asserting exactness."""
    num = list(num)
    deg_d = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - deg_d)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + deg_d]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        q = c // lead
        out[k] = q
        if q:
            for i, dc in enumerate(den):
                num[k + i] -= q * dc
    if any(num):
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            poly = _int_poly_div_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CyclotomicRing:
    """Q(zeta_N) with precomputed reduction of every power of zeta."""

    def __init__(self, conductor: int):
        if conductor < 2:
            raise ValueError("conductor must be at least 2")
        self.conductor = conductor
        modulus = cyclotomic_polynomial(conductor)
        self.degree = len(modulus) - 1
        # x^degree = -(lower coefficients); modulus is monic
        self._carry = tuple(-c for c in modulus[:-1])
        rows = []
        cur = [0] * self.degree
        cur[0] = 1
        for _ in range(conductor):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i, c in enumerate(self._carry):
                    cur[i] += top * c
        self._zeta_rows = rows
        self.zero = CycNum(self, (0,) * self.degree, 1)
        self.one = CycNum(self, rows[0], 1)

    def zeta_power(self, k: int) -> "CycNum":
        return CycNum(self, self._zeta_rows[k % self.conductor], 1)

    def from_int(self, v: int) -> "CycNum":
        vec = [0] * self.degree
        vec[0] = v
        return CycNum(self, vec, 1)

    def from_fraction(self, fr: Fraction) -> "CycNum":
        vec = [0] * self.degree
        vec[0] = fr.numerator
        return CycNum(self, vec, fr.denominator)

    def from_coeffs(self, coeffs, den: int = 1) -> "CycNum":
        """Value sum(coeffs[k] * zeta^k) / den; coeffs may exceed the basis length."""
        vec = [0] * self.degree
        for k, c in enumerate(coeffs):
            if c:
                row = self._zeta_rows[k % self.conductor]
                for i, r in enumerate(row):
                    vec[i] += c * r
        return CycNum(self, vec, den)

    def __repr__(self):
        return f"CyclotomicRing({self.conductor})"


class CycNum:
    """One exact element of a CyclotomicRing."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: CyclotomicRing, num, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            num = [-v for v in num]
        g = den
        for v in num:
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            num = [v // g for v in num]
            den //= g
        self.ring = ring
        self.num = tuple(num)
        self.den = den

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self, other
        if a.den == b.den:
            return CycNum(a.ring, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycNum(
            a.ring,
            [x * b.den + y * a.den for x, y in zip(a.num, b.num)],
            a.den * b.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.ring, [-v for v in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum(self.ring, [v * other for v in self.num], self.den)
        if isinstance(other, Fraction):
            return CycNum(
                self.ring,
                [v * other.numerator for v in self.num],
                self.den * other.denominator,
            )
        if not isinstance(other, CycNum) or other.ring is not self.ring:
            return NotImplemented
        d = self.ring.degree
        conv = [0] * (2 * d - 1)
        bn = other.num
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(bn):
                    if b:
                        conv[i + j] += a * b
        vec = list(conv[:d])
        rows = self.ring._zeta_rows
        n = self.ring.conductor
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = rows[k % n]
                for i, r in enumerate(row):
                    vec[i] += c * r
        return CycNum(self.ring, vec, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.ring.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.ring is not self.ring:
                return NotImplemented
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, Fraction):
            return self.ring.from_fraction(other)
        return NotImplemented

    # -- predicates and maps ---------------------------------------------

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.ring.conductor, self.num, self.den))

    def conjugate(self) -> "CycNum":
        """Image under zeta -> zeta^(-1) (complex conjugation)."""
        ring = self.ring
        vec = [0] * ring.degree
        n = ring.conductor
        for k, c in enumerate(self.num):
            if c:
                row = ring._zeta_rows[(n - k) % n]
                for i, r in enumerate(row):
                    vec[i] += c * r
        return CycNum(ring, vec, self.den)

    def complex_value(self) -> complex:
        n = self.ring.conductor
        total = 0j
        for k, c in enumerate(self.num):
            if c:
                total += c * cmath.exp(2j * cmath.pi * k / n)
        return total / self.den

    def as_fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.num)

    def rational_value(self) -> Fraction:
        """The value as a rational number; raises if it is not rational."""
        if any(self.num[1:]):
            raise ValueError("value is not rational")
        return Fraction(self.num[0], self.den)

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclid algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.ring.conductor)]
        a = [Fraction(v, self.den) for v in self.num]
        r0, r1 = mod, _frac_trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _frac_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
        # r1 is a nonzero constant since Phi_N is irreducible over Q
        c = r1[0]
        inv_coeffs = [v / c for v in s1]
        den = 1
        for v in inv_coeffs:
            den = den * v.denominator // gcd(den, v.denominator)
        vec = [0] * self.ring.degree
        for k, v in enumerate(inv_coeffs):
            vec[k] = v.numerator * (den // v.denominator)
        return CycNum(self.ring, vec, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.num):
            if c:
                terms.append(f"{c}*z^{k}" if k else f"{c}")
        body = " + ".join(terms) if terms else "0"
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"CycNum[{self.ring.conductor}]({body})"


def _frac_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return list(p)


def _frac_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return _frac_trim(out)


def _frac_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _frac_trim(out)


def _frac_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [Fraction(0)], _frac_trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        coef = a[k + db] / lead
        q[k] = coef
        if coef:
            for i, c in enumerate(b):
                a[k + i] -= coef * c
    return _frac_trim(q), _frac_trim(a)


def solve_linear_system(rows, rhs):
    """Exact Gaussian elimination over a cyclotomic field.

    rows is a list of equal-length CycNum lists, rhs a CycNum list.  Returns
    (solution, rank, consistent) where free variables are set to zero.  The
    caller is expected to re-substitute the solution into every equation when
    the system is overdetermined.
    """
    if not rows:
        return [], 0, True
    ring = rhs[0].ring
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, len(aug)):
            if not aug[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        aug[rank], aug[pivot_row] = aug[pivot_row], aug[rank]
        inv = aug[rank][col].inverse()
        aug[rank] = [v * inv for v in aug[rank]]
        for i in range(len(aug)):
            if i != rank and not aug[i][col].is_zero():
                factor = aug[i][col]
                aug[i] = [v - factor * w for v, w in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    consistent = all(
        row[-1].is_zero() for row in aug[rank:]
    )
    solution = [ring.zero] * ncols
    for r, col in enumerate(pivots):
        solution[col] = aug[r][-1]
    return solution, rank, consistent
