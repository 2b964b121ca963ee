import pytest

from gammasums.errors import CapExceeded, LevelMissing, NotPrime
from gammasums.fields import (
    MultCharacter,
    all_characters,
    build_tower,
    gauss_sum,
    kloosterman,
)


def test_f4_defining_relation():
    # F_4 with omega^2 = omega + 1
    t = build_tower(2, 2, 1)
    lv = t.level(1)
    assert lv.poly == (1, 1, 1)
    omega = lv.gen
    assert lv.mul(omega, omega) == lv.add(omega, 1)
    # Tr_{F4/F2}(omega) = omega + omega^2 = 1
    assert t.abs_trace(omega, 1) == 1


def test_f3_generator():
    t = build_tower(3, 1, 1)
    lv = t.level(1)
    assert lv.gen == 2
    assert lv.dlog[2] == 1
    assert lv.dlog[1] == 0


def test_f9_compatible_generator(tower_f3):
    l2 = tower_f3.level(2)
    g9 = l2.gen
    # norm compatibility: g9^((9-1)/(3-1)) = g9^4 = g3 = 2
    assert tower_f3.unembed(l2.power(g9, 4), 2, 1) == 2
    assert tower_f3.norm(g9, 2) == 2


def test_frobenius_is_qth_power(tower_f3):
    l2 = tower_f3.level(2)
    for x in l2.elements():
        cube = l2.mul(l2.mul(x, x), x) if x else 0
        assert (l2.frobenius(x) if x else 0) == cube


def test_embeddings_commute():
    t = build_tower(2, 1, 3)  # levels 1,2,3: divisor pairs (1,2),(1,3)
    for a in t.levels:
        for b in t.levels:
            if b % a or a == b:
                continue
            la = t.level(a)
            for x in la.elements():
                y = t.embed(x, a, b)
                assert t.unembed(y, b, a) == x


def test_trace_and_norm_transitive():
    t = build_tower(2, 2, 2)  # q = 4, levels F_4 and F_16
    l2 = t.level(2)
    for x in l2.elements():
        # absolute trace factors through the intermediate trace
        via = t.trace(x, 2, to=1)
        assert t.abs_trace(via, 1) == t.abs_trace(x, 2)
        if x:
            # norm transitivity down to the base, multiplicatively
            nx = t.norm(x, 2, to=1)
            assert t.level(1).power(nx, 1) == nx


def test_psi_additive_and_orthogonal(tower_f3):
    t = tower_f3
    lv = t.level(1)
    for x in lv.elements():
        for y in lv.elements():
            assert t.psi(lv.add(x, y)) == t.psi(x) * t.psi(y)
    total = t.ring.zero
    for x in lv.elements():
        total = total + t.psi(x)
    assert total.is_zero()
    assert t.psi(0) == t.ring.one
    # over F_3: psi(1) and psi(2) are the primitive cube roots
    n = t.ring.conductor
    assert t.psi(1) == t.ring.zeta_power(n // 3)
    assert t.psi(2) == t.ring.zeta_power(2 * (n // 3))


def test_gauss_sum_examples(tower_f3):
    t = tower_f3
    triv = MultCharacter(t, 1, 0)
    assert gauss_sum(triv) == t.ring.from_int(-1)
    quad = MultCharacter(t, 1, 1)
    g = gauss_sum(quad)
    n = t.ring.conductor
    z3 = t.ring.zeta_power(n // 3)
    assert g == z3 - z3 * z3
    assert g * g == t.ring.from_int(-3)


@pytest.mark.parametrize("p,f", [(3, 1), (2, 2), (5, 1)])
def test_gauss_product_identity(p, f):
    t = build_tower(p, f, 2)
    for m in (1, 2):
        lv = t.level(m)
        size = t.q**m
        for chi in all_characters(t, m):
            if chi.is_trivial():
                continue
            prod = gauss_sum(chi) * gauss_sum(chi.conj())
            assert prod == chi.value(lv.neg(1)) * size
            assert abs(abs(gauss_sum(chi).complex_value()) - size**0.5) < 1e-9


@pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_hasse_davenport(p, f):
    t = build_tower(p, f, 3)
    for chi in all_characters(t, 1):
        if chi.is_trivial():
            continue
        g1 = gauss_sum(chi)
        for m in (2, 3):
            assert (-g1) ** m == -gauss_sum(chi.lift(m))


def test_kloosterman_examples(tower_f3):
    t = tower_f3
    for x in (1, 2):
        assert kloosterman(t, x, 1) == -t.psi(x)
    assert kloosterman(t, 1, 2) == t.ring.from_int(-1)
    assert kloosterman(t, 2, 2) == t.ring.from_int(2)


def test_build_tower_errors():
    with pytest.raises(NotPrime):
        build_tower(4, 1, 1)
    with pytest.raises(CapExceeded):
        build_tower(2, 1, 30, cap=1 << 10)
    t = build_tower(3, 1, 1)
    with pytest.raises(LevelMissing):
        t.level(2)


def test_character_multiplicativity(tower_f5):
    t = tower_f5
    lv = t.level(1)
    chi = MultCharacter(t, 1, 1)
    for x in lv.units():
        for y in lv.units():
            assert chi.value(lv.mul(x, y)) == chi.value(x) * chi.value(y)
    assert MultCharacter(t, 1, 0).is_trivial()
    assert not chi.is_trivial()


def test_debug_dump(tower_f3):
    dump = tower_f3.debug_dump()
    assert dump["p"] == 3 and dump["q"] == 3
    assert dump["levels"][1]["poly"] == [1, 1]
    assert dump["levels"][2]["poly"] == [2, 1, 1]
