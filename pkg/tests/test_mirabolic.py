import itertools
import random

import pytest

from gammasums.errors import CapExceeded, NotCyclic, NotNormalized
from gammasums.fields import build_tower
from gammasums.matrices import charpoly, mat_identity, mat_inv, mat_mul
from gammasums.mirabolic import (
    bernstein_coords,
    census_prediction,
    companion_matrix,
    companion_normalize,
    coset_charpoly,
    coset_rank,
    group_point,
    lemma_translation_map,
    normalize_stratum,
    orbit_census,
    parabolic_rank_classify,
    q1_elements,
    stratum_index,
    u_q_matrix,
)


@pytest.fixture(scope="module")
def t3():
    return build_tower(3, 1, 1)


@pytest.fixture(scope="module")
def t2():
    return build_tower(2, 1, 1)


def random_point(tower, n, rng):
    lv = tower.level(1)
    while True:
        rows = [[rng.randrange(lv.size) for _ in range(n)] for _ in range(n)]
        try:
            return group_point(tower, rows)
        except ValueError:
            continue


def test_stratum_examples(t3):
    assert stratum_index(group_point(t3, [[1, 0], [0, 1]])) == 1
    assert stratum_index(group_point(t3, [[0, 1], [1, 1]])) == 2
    assert stratum_index(group_point(t3, [[1, 0], [0, 2]])) == 1


def test_stratum_left_translation_invariance_exhaustive(t3):
    lv = t3.level(1)
    for entries in itertools.product(range(3), repeat=4):
        rows = ((entries[0], entries[1]), (entries[2], entries[3]))
        try:
            x = group_point(t3, rows)
        except ValueError:
            continue
        m = stratum_index(x)
        for v in itertools.product(range(3), repeat=1):
            ux = group_point(t3, mat_mul(lv, u_q_matrix(t3, 2, v), x.rows))
            assert stratum_index(ux) == m


def test_companion_normalize_example():
    t5 = build_tower(5, 1, 1)
    lv = t5.level(1)
    x_f = ((1, 1), (1, 2))
    g, a = companion_normalize(lv, x_f)
    assert g == ((1, 1), (0, 1))
    assert a == (2, 1)  # t^2 - 3t + 1 over F_5
    conj = mat_mul(lv, mat_inv(lv, g), mat_mul(lv, x_f, g))
    assert conj == companion_matrix(lv, a)
    with pytest.raises(NotCyclic):
        companion_normalize(lv, mat_identity(2))


def test_companion_normalize_uniqueness_exhaustive(t3):
    # any element of the e_1 stabilizer conjugating to companion form equals
    # the cyclic-basis matrix
    lv = t3.level(1)
    x_f = ((0, 2), (1, 1))  # companion already, cyclic
    rng = random.Random(5)
    for _ in range(5):
        x = random_point(t3, 2, rng)
        if stratum_index(x) != 2:
            continue
        g0, a = companion_normalize(lv, x.rows)
        comp = companion_matrix(lv, a)
        found = []
        for g, ginv in q1_elements(t3, 2):
            if mat_mul(lv, ginv, mat_mul(lv, x.rows, g)) == comp:
                found.append(g)
        assert found == [g0]


def test_normalize_and_reassemble_roundtrip(t3):
    rng = random.Random(7)
    for _ in range(100):
        x = random_point(t3, 3, rng)
        h, y, m = normalize_stratum(x)
        assert tuple(r[0] for r in h) == (1, 0, 0)
        sd = bernstein_coords(y, m)
        assert sd.m == m == stratum_index(x)
        assert sd.reassemble(t3) == y.rows


def test_bernstein_rejects_unnormalized(t3):
    x = group_point(t3, [[1, 1], [1, 0]])
    with pytest.raises(NotNormalized):
        bernstein_coords(x, 2)


def test_translation_map_bijective_including_shared_eigenvalues(t3):
    # GL(3) layout, stratum 2: (v1, vm1) -> y is bijective for every
    # companion block and every scalar, shared eigenvalue or not
    lv = t3.level(1)
    for a1 in range(3):
        for a2 in (1, 2):
            x_f = companion_matrix(lv, (a1, a2), 2)
            for xe in (1, 2):
                seen = set()
                for v1 in range(3):
                    for vm in range(3):
                        y = lemma_translation_map(
                            lv, x_f, ((xe,),), (v1,), ((vm,), (0,))
                        )
                        seen.add(y)
                assert len(seen) == 9


def test_coset_charpoly_shift_formula(t3):
    rng = random.Random(11)
    lv = t3.level(1)
    for _ in range(20):
        x = random_point(t3, 3, rng)
        h, y, m = normalize_stratum(x)
        for v in itertools.product(range(3), repeat=2):
            b, info = coset_charpoly(y, v, m)
            assert info["closed_formula_ok"]
            assert info["factorization_ok"]
            assert info["bm_fixed"]
        assert coset_rank(y) == m - 1
        assert coset_rank(x) == m - 1


def test_coset_charpoly_m2_formula(t3):
    # b_1 = a_1 + v_1 and b_2 = a_2 in the stratum-2 layout
    lv = t3.level(1)
    rows = ((0, 2, 1), (1, 1, 1), (0, 0, 1))
    y = group_point(t3, rows)
    a = charpoly(lv, ((0, 2), (1, 1)))
    for v1 in range(3):
        b, _ = coset_charpoly(y, (v1, 0), 2)
        assert b == (lv.add(a[0], v1), a[1])
    b, _ = coset_charpoly(y, (0, 0), 2)
    assert b == a


@pytest.mark.parametrize(
    "n,q,p,f",
    [(2, 2, 2, 1), (2, 3, 3, 1), (2, 4, 2, 2), (2, 5, 5, 1), (3, 2, 2, 1)],
)
def test_orbit_census_matches_recursion(n, q, p, f):
    tower = build_tower(p, f, 1)
    lv = tower.level(1)
    for lead in itertools.product(lv.elements(), repeat=n - 1):
        for const in lv.units():
            a = tuple(lead) + (const,)
            cen = orbit_census(tower, n, a)
            pred = census_prediction(tower, n, a)
            assert cen["count"] == pred["count"], a
            assert {
                k: len(v) for k, v in cen["by_stratum"].items()
            } == pred["by_stratum"], a


def test_census_n1_single_orbit(t3):
    assert orbit_census(t3, 1, (2,))["count"] == 1


def test_census_cap():
    t7 = build_tower(7, 1, 1)
    with pytest.raises(CapExceeded):
        orbit_census(t7, 3, (0, 0, 1))


def test_parabolic_rank_classify(t3):
    # inside the parabolic: rank zero, identity conjugator
    xp = group_point(t3, [[1, 1], [0, 1]])
    r, (g1, g2), rep = parabolic_rank_classify(xp, (1, 1))
    assert r == 0 and rep.rows == xp.rows
    # generic: rank one, pivot in the corner
    xq = group_point(t3, [[0, 1], [1, 0]])
    r, _, rep = parabolic_rank_classify(xq, (1, 1))
    assert r == 1 and rep.rows[1][0] == 1
    rng = random.Random(13)
    for _ in range(30):
        x = random_point(t3, 3, rng)
        for split in ((1, 2), (2, 1)):
            r, _, rep = parabolic_rank_classify(x, split)
            r2, _, rep2 = parabolic_rank_classify(rep, split)
            assert (r2, rep2.rows) == (r, rep.rows)
            block = [row[: split[0]] for row in rep.rows[split[0] :]]
            if r == 1:
                assert block[0][split[0] - 1] == 1


def test_charpoly_conjugation_invariance(t3):
    lv = t3.level(1)
    rng = random.Random(17)
    for _ in range(50):
        x = random_point(t3, 3, rng)
        g = random_point(t3, 3, rng)
        conj = mat_mul(lv, g.rows, mat_mul(lv, x.rows, mat_inv(lv, g.rows)))
        assert group_point(t3, conj).char == x.char


def test_census_csv_and_matrix_json(t3):
    from gammasums.mirabolic import census_csv, matrix_to_json

    out = census_csv(t3, 2, [(0, 2), (1, 1)])
    lines = out.strip().splitlines()
    assert lines[0] == "charpoly,stratum,orbit_sizes"
    assert any(line.startswith("0 2,") for line in lines[1:])
    assert matrix_to_json(((1, 0), (0, 2))) == [[1, 0], [0, 2]]
