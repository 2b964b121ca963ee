import random
from fractions import Fraction

import pytest

from gammasums.cyclotomic import (
    CyclotomicRing,
    cyclotomic_polynomial,
    solve_linear_system,
)


KNOWN_POLYS = {
    1: (-1, 1),
    2: (1, 1),
    3: (1, 1, 1),
    4: (1, 0, 1),
    6: (1, -1, 1),
    8: (1, 0, 0, 0, 1),
    12: (1, 0, -1, 0, 1),
    24: (1, 0, 0, 0, -1, 0, 0, 0, 1),
}


@pytest.mark.parametrize("n,coeffs", sorted(KNOWN_POLYS.items()))
def test_cyclotomic_polynomials(n, coeffs):
    assert cyclotomic_polynomial(n) == coeffs


def test_zeta_powers_and_reduction():
    ring = CyclotomicRing(12)
    z = ring.zeta_power(1)
    assert z**12 == ring.one
    assert z**6 == -ring.one
    i = ring.zeta_power(3)
    assert i * i == ring.from_int(-1)
    # canonical zero
    assert (z**6 + ring.one).is_zero()


def test_ring_axioms_randomized():
    ring = CyclotomicRing(24)
    rng = random.Random(20240809)
    for _ in range(1000):
        a, b, c = (
            ring.from_coeffs(
                [rng.randrange(-5, 6) for _ in range(ring.degree)],
                rng.randrange(1, 5),
            )
            for _ in range(3)
        )
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_conjugation_is_involutive_ring_map():
    ring = CyclotomicRing(20)
    rng = random.Random(7)
    for _ in range(100):
        a, b = (
            ring.from_coeffs(
                [rng.randrange(-4, 5) for _ in range(ring.degree)],
                rng.randrange(1, 4),
            )
            for _ in range(2)
        )
        assert a.conjugate().conjugate() == a
        assert (a + b).conjugate() == a.conjugate() + b.conjugate()
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()


def test_complex_embedding_agrees():
    ring = CyclotomicRing(15)
    rng = random.Random(9)
    for _ in range(50):
        a, b = (
            ring.from_coeffs(
                [rng.randrange(-3, 4) for _ in range(ring.degree)],
                rng.randrange(1, 4),
            )
            for _ in range(2)
        )
        lhs = (a * b).complex_value()
        rhs = a.complex_value() * b.complex_value()
        assert abs(lhs - rhs) < 1e-9


def test_inverse_and_division():
    ring = CyclotomicRing(24)
    rng = random.Random(3)
    for _ in range(30):
        a = ring.from_coeffs(
            [rng.randrange(-3, 4) for _ in range(ring.degree)], rng.randrange(1, 4)
        )
        if a.is_zero():
            continue
        assert a * a.inverse() == ring.one
        assert (a / a) == ring.one
    with pytest.raises(ZeroDivisionError):
        ring.zero.inverse()


def test_rational_value():
    ring = CyclotomicRing(8)
    assert ring.from_fraction(Fraction(3, 2)).rational_value() == Fraction(3, 2)
    with pytest.raises(ValueError):
        ring.zeta_power(1).rational_value()


def test_linear_solver_exact():
    ring = CyclotomicRing(12)
    z = ring.zeta_power(1)
    rows = [[ring.one, z], [z, ring.one], [ring.one + z, ring.one + z]]
    rhs = [ring.from_int(2), ring.zero, ring.from_int(2)]
    sol, rank, consistent = solve_linear_system(rows, rhs)
    assert consistent and rank == 2
    for row, b in zip(rows, rhs):
        acc = ring.zero
        for c, s in zip(row, sol):
            acc = acc + c * s
        assert acc == b
    # inconsistent variant
    rhs_bad = [ring.from_int(2), ring.zero, ring.from_int(3)]
    _, _, consistent = solve_linear_system(rows, rhs_bad)
    assert not consistent
