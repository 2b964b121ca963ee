"""Finite-field towers with compatible generators, dlog tables and character sums.

Level m of a tower over F_q (q = p^f) is F_{q^m} = F_p[x]/(h_m) where h_m is
the lexicographically smallest monic irreducible polynomial of degree f*m
(coefficients compared low degree first) that is primitive -- the class of x
generates the unit group -- and whose root powers are compatible with every
lower level: the (size_m-1)/(size_a-1) power of the root is a root of h_a
for each level a dividing m.  With that choice the dlog-based embedding
F_{q^a} -> F_{q^m} is a field homomorphism and generators are norm-compatible
by construction.

Elements are encoded as base-p integers (digit i is the coefficient of x^i),
so 0 and 1 encode the field's zero and one at every level.  Unit arithmetic
is discrete-log table lookup; addition is digitwise mod p.

Character values live in Q(zeta_N) where N = lcm(p, q-1, ..., q^M-1), so one
ring holds the additive character and every multiplicative character of every
level of the tower.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from .cyclotomic import CycNum, CyclotomicRing
from .errors import CapExceeded, LevelMissing, NotPrime

DEFAULT_CAP = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomial helpers over F_p (integer coefficient lists, low degree first)


def _pol_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pol_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pol_trim(out)


def _pol_mod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k]
        if c:
            c = (c * inv_lead) % p
            for i in range(dm + 1):
                a[k - dm + i] = (a[k - dm + i] - c * mod[i]) % p
    del a[dm:]
    return _pol_trim(a)


def _pol_pow_mod(a, e, mod, p):
    out = [1]
    base = _pol_mod(a, mod, p)
    while e:
        if e & 1:
            out = _pol_mod(_pol_mul(out, base, p), mod, p)
        base = _pol_mod(_pol_mul(base, base, p), mod, p)
        e >>= 1
    return out


def _irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    if poly[0] == 0:
        return False
    for e in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=e):
            div = list(tail) + [1]
            if not _pol_mod(poly, div, p):
                return False
    return True


def _digits(e, p, k):
    out = []
    for _ in range(k):
        e, r = divmod(e, p)
        out.append(r)
    return out


class Level:
    """One extension F_{q^m} in a tower, with exp/dlog tables."""

    def __init__(self, tower, m, poly):
        self.tower = tower
        self.m = m
        self.p = tower.p
        self.deg = tower.f * m
        self.size = tower.q**m
        self.poly = tuple(poly)
        p = self.p
        # powers of the root x; encoding of x is the integer p
        exp = [1]
        cur = [1]
        for _ in range(self.size - 2):
            cur = _pol_mod([0] + cur, poly, p)
            exp.append(self._encode(cur))
        self.exp = exp
        dlog = [-1] * self.size
        for k, v in enumerate(exp):
            dlog[v] = k
        self.dlog = dlog
        self.gen = exp[1] if self.size > 2 else 1

    def _encode(self, coeffs):
        e = 0
        for c in reversed(coeffs):
            e = e * self.p + c
        return e

    def elements(self):
        return range(self.size)

    def units(self):
        return self.exp

    def add(self, a, b):
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        p = self.p
        out = 0
        mult = 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.dlog[a] + self.dlog[b]) % (self.size - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.exp[-self.dlog[a] % (self.size - 1)]

    def power(self, a, e):
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return 0
        return self.exp[(self.dlog[a] * e) % (self.size - 1)]

    def frobenius(self, a, i=1):
        """a -> a^(q^i)."""
        return self.power(a, pow(self.tower.q, i, self.size - 1)) if a else 0

    def scalar(self, c):
        """Embed an integer c mod p as a field element."""
        return c % self.p


class FieldTower:
    """Extensions F_{q^m}, 1 <= m <= M, with compatible generators."""

    def __init__(self, p, f, levels, cap=DEFAULT_CAP):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if f < 1 or levels < 1:
            raise ValueError("degree and level bound must be positive")
        self.p = p
        self.f = f
        self.q = p**f
        self.max_level = levels
        total = sum(self.q**m for m in range(1, levels + 1))
        if total > cap:
            raise CapExceeded(
                f"tower would hold {total} elements, above the cap {cap}"
            )
        self.levels = {}
        for m in range(1, levels + 1):
            poly = self._find_poly(m)
            self.levels[m] = Level(self, m, poly)
        conductor = lcm(p, *(self.q**m - 1 for m in range(1, levels + 1)))
        self.ring = CyclotomicRing(conductor)

    # -- construction -----------------------------------------------------

    def _find_poly(self, m):
        p, deg = self.p, self.f * m
        size = self.q**m
        order_primes = prime_factors(size - 1)
        for tail in itertools.product(range(p), repeat=deg):
            if tail[0] == 0:
                continue
            poly = list(tail) + [1]
            if not _irreducible(poly, p):
                continue
            if size > 2:
                x = [0, 1]
                if any(
                    _pol_pow_mod(x, (size - 1) // ell, poly, p) == [1]
                    for ell in order_primes
                ):
                    continue
            if not self._compatible(poly, m):
                continue
            return poly
        raise ArithmeticError(f"no compatible primitive polynomial at level {m}")

    def _compatible(self, poly, m):
        p = self.p
        size = self.q**m
        for a in range(1, m):
            if m % a:
                continue
            lower = self.levels[a]
            r = _pol_pow_mod([0, 1], (size - 1) // (lower.size - 1), poly, p)
            acc = [lower.poly[0] % p]
            rp = [1]
            for c in lower.poly[1:]:
                rp = _pol_mod(_pol_mul(rp, r, p), poly, p)
                if c:
                    term = [(c * v) % p for v in rp]
                    acc = [
                        (x + y) % p
                        for x, y in itertools.zip_longest(acc, term, fillvalue=0)
                    ]
            if _pol_trim(list(acc)):
                return False
        return True

    # -- level access and maps ---------------------------------------------

    def level(self, m) -> Level:
        if m not in self.levels:
            raise LevelMissing(f"level {m} not in tower (bound {self.max_level})")
        return self.levels[m]

    def embed(self, x, a, b):
        """Embed x from F_{q^a} into F_{q^b} (a must divide b)."""
        la, lb = self.level(a), self.level(b)
        if b % a:
            raise ValueError(f"no embedding from level {a} to level {b}")
        if x == 0:
            return 0
        step = (lb.size - 1) // (la.size - 1)
        return lb.exp[(la.dlog[x] * step) % (lb.size - 1)]

    def unembed(self, x, b, a):
        """Section of embed; raises ValueError when x is not in the subfield."""
        la, lb = self.level(a), self.level(b)
        if b % a:
            raise ValueError(f"level {a} is not a subfield of level {b}")
        if x == 0:
            return 0
        step = (lb.size - 1) // (la.size - 1)
        k = lb.dlog[x]
        if k % step:
            raise ValueError("element does not lie in the requested subfield")
        return la.exp[(k // step) % (la.size - 1)]

    def trace(self, x, m, to=1):
        """Field trace from level m to level `to` (to must divide m)."""
        lm = self.level(m)
        if m % to:
            raise ValueError("trace target must be a sublevel")
        acc = 0
        cur = x
        for _ in range(m // to):
            acc = lm.add(acc, cur)
            cur = lm.frobenius(cur, to)
        return self.unembed(acc, m, to)

    def abs_trace(self, x, m) -> int:
        """Trace from F_{q^m} all the way to the prime field, as an int mod p."""
        lm = self.level(m)
        acc = 0
        cur = x
        for _ in range(self.f * m):
            acc = lm.add(acc, cur)
            cur = lm.power(cur, self.p) if cur else 0
        if acc >= self.p:
            raise ArithmeticError("absolute trace did not land in the prime field")
        return acc

    def norm(self, x, m, to=1):
        """Field norm from level m to level `to`."""
        lm = self.level(m)
        if m % to:
            raise ValueError("norm target must be a sublevel")
        if x == 0:
            return 0
        lt = self.level(to)
        step = (lm.size - 1) // (lt.size - 1)
        return self.unembed(lm.exp[(lm.dlog[x] * step) % (lm.size - 1)], m, to)

    # -- characters ---------------------------------------------------------

    def psi(self, x, m=1) -> CycNum:
        """Additive character zeta_p^(absolute trace of x)."""
        n = self.ring.conductor
        return self.ring.zeta_power((n // self.p) * self.abs_trace(x, m))

    def zeta_unit_exponent(self, m, k) -> int:
        """Exponent of zeta_N representing zeta_{q^m-1}^k."""
        n = self.ring.conductor
        size = self.q**m
        return (n // (size - 1)) * (k % (size - 1))

    def debug_dump(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "q": self.q,
            "levels": {
                m: {"poly": list(lv.poly), "generator": lv.gen}
                for m, lv in self.levels.items()
            },
            "conductor": self.ring.conductor,
        }


def build_tower(p, f, levels, cap=DEFAULT_CAP) -> FieldTower:
    """Construct the tower F_{q^m}, m <= levels, for q = p^f."""
    return FieldTower(p, f, levels, cap=cap)


@dataclass(frozen=True)
class MultCharacter:
    """Multiplicative character of F_{q^m}^x: x -> zeta_{q^m-1}^(j * dlog x)."""

    tower: FieldTower
    level: int
    exponent: int

    def __post_init__(self):
        size = self.tower.q**self.level
        object.__setattr__(self, "exponent", self.exponent % (size - 1))

    def value(self, x) -> CycNum:
        if x == 0:
            raise ZeroDivisionError("multiplicative character at zero")
        lv = self.tower.level(self.level)
        k = self.tower.zeta_unit_exponent(self.level, self.exponent * lv.dlog[x])
        return self.tower.ring.zeta_power(k)

    def is_trivial(self) -> bool:
        return self.exponent == 0

    def conj(self) -> "MultCharacter":
        return MultCharacter(self.tower, self.level, -self.exponent)

    def __mul__(self, other: "MultCharacter") -> "MultCharacter":
        if other.level != self.level:
            raise ValueError("characters live on different levels")
        return MultCharacter(self.tower, self.level, self.exponent + other.exponent)

    def lift(self, m) -> "MultCharacter":
        """Composition with the norm map from level m down to this level."""
        if m % self.level:
            raise ValueError("lift target must be a multiple of the level")
        size_lo = self.tower.q**self.level
        size_hi = self.tower.q**m
        step = (size_hi - 1) // (size_lo - 1)
        return MultCharacter(self.tower, m, self.exponent * step)


def all_characters(tower, level):
    size = tower.q**level
    return [MultCharacter(tower, level, j) for j in range(size - 1)]


def gauss_sum(chi: MultCharacter) -> CycNum:
    """Sum of chi(x) psi(x) over the units of chi's level."""
    tower = chi.tower
    lv = tower.level(chi.level)
    total = tower.ring.zero
    for x in lv.units():
        total = total + chi.value(x) * tower.psi(x, chi.level)
    return total


def kloosterman(tower, t, r) -> CycNum:
    """(-1)^r * sum of psi(x_1 + ... + x_r) over units with product t."""
    if r < 1:
        raise ValueError("arity must be at least 1")
    lv = tower.level(1)
    if t == 0:
        raise ZeroDivisionError("Kloosterman point must be a unit")
    counts = {}
    for xs in itertools.product(lv.units(), repeat=r - 1):
        prod = 1
        s = 0
        for x in xs:
            prod = lv.mul(prod, x)
            s = lv.add(s, x)
        last = lv.mul(t, lv.inv(prod))
        s = lv.add(s, last)
        counts[s] = counts.get(s, 0) + 1
    total = tower.ring.zero
    for s, c in counts.items():
        total = total + tower.psi(s) * c
    if r % 2:
        total = -total
    return total
