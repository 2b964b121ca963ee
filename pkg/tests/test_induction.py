import itertools
import random

import pytest

from gammasums.errors import NotComputableLocus, NotTopStratum
from gammasums.fields import build_tower
from gammasums.induction import (
    GammaTrace,
    factor_monic,
    flag_fixed_points,
    flag_grading,
    full_flags,
    induced_trace,
    is_regular,
    levi_restriction_sum,
    root_multiset,
    steinberg_fiber,
)
from gammasums.matrices import mat_inv, mat_mul
from gammasums.mirabolic import companion_matrix, group_point
from gammasums.torus import (
    TorusTraces,
    expand_twisted_point,
    validate_weight_system,
)


@pytest.fixture(scope="module")
def std2(tower_f3):
    return TorusTraces(tower_f3, validate_weight_system([2], "std"))


@pytest.fixture(scope="module")
def gamma_std2(std2):
    return GammaTrace(std2)


def test_flag_counts(tower_f3):
    assert len(full_flags(tower_f3, 2)) == 4
    assert len(full_flags(tower_f3, 3)) == 52  # (q^2+q+1)(q+1)


def test_flag_fixed_point_examples(tower_f3):
    central = group_point(tower_f3, [[2, 0], [0, 2]])
    assert len(flag_fixed_points(central)) == 4
    split = group_point(tower_f3, [[1, 0], [0, 2]])
    fixed = flag_fixed_points(split)
    assert len(fixed) == 2
    # the gradings are the two eigenvalue orderings
    grads = sorted(flag_grading(split, f) for f in fixed)
    assert grads == [(1, 2), (2, 1)]
    nonsplit = group_point(tower_f3, [[0, 1], [2, 0]])
    assert flag_fixed_points(nonsplit) == []


def test_induced_trace_examples(tower_f3, std2):
    lv = tower_f3.level(1)
    split = group_point(tower_f3, [[1, 0], [0, 2]])
    assert induced_trace(std2, split) == tower_f3.psi(lv.add(1, 2)) * 2
    nonsplit = group_point(tower_f3, [[0, 1], [2, 0]])
    assert induced_trace(std2, nonsplit).is_zero()


def test_factor_and_roots(tower_f3):
    lv = tower_f3.level(1)
    # (t-1)(t-2) = t^2 + 2 over F_3
    fac = dict(factor_monic(tower_f3, (2, 0, 1)))
    assert fac == {(2, 1): 1, (1, 1): 1}
    roots = sorted(root_multiset(tower_f3, (0, 2)))
    assert roots == [(1, 1), (1, 2)]
    # (t-1)^2
    assert sorted(root_multiset(tower_f3, (1, 1))) == [(1, 1), (1, 1)]


def test_steinberg_fiber_examples(tower_f3):
    # distinct rational roots: two orderings for the identity, none twisted
    assert len(steinberg_fiber(tower_f3, (0, 2), (0, 1))) == 2
    assert steinberg_fiber(tower_f3, (0, 2), (1, 0)) == []
    # irreducible quadratic: the twist carries both orderings
    assert steinberg_fiber(tower_f3, (0, 1), (0, 1)) == []
    assert len(steinberg_fiber(tower_f3, (0, 1), (1, 0))) == 2
    # repeated root: one point either way
    assert len(steinberg_fiber(tower_f3, (1, 1), (0, 1))) == 1
    assert len(steinberg_fiber(tower_f3, (1, 1), (1, 0))) == 1


def test_phi_regular_examples(tower_f3, gamma_std2):
    lv = tower_f3.level(1)
    # split rss
    x = group_point(tower_f3, [[1, 0], [0, 2]])
    assert gamma_std2.phi_regular(x) == tower_f3.psi(lv.add(1, 2))
    # nonsplit rss
    x = group_point(tower_f3, [[0, 1], [2, 0]])
    assert gamma_std2.phi_regular(x) == tower_f3.psi(0)
    # regular non-semisimple with characteristic vector (t-1)^2
    x = group_point(tower_f3, [[1, 1], [0, 1]])
    assert gamma_std2.phi_regular(x) == tower_f3.psi(2)


def test_phi_refuses_non_regular(tower_f3, gamma_std2):
    with pytest.raises(NotComputableLocus):
        gamma_std2.phi_regular(group_point(tower_f3, [[2, 0], [0, 2]]))


def test_phi_equals_psi_trace_everywhere(tower_f3, gamma_std2):
    lv = tower_f3.level(1)
    for entries in itertools.product(range(3), repeat=4):
        rows = ((entries[0], entries[1]), (entries[2], entries[3]))
        try:
            x = group_point(tower_f3, rows)
        except ValueError:
            continue
        if is_regular(x):
            tr = lv.add(rows[0][0], rows[1][1])
            assert gamma_std2.phi_regular(x) == tower_f3.psi(tr)


def test_phi_conjugation_invariance(tower_f3, gamma_std2):
    lv = tower_f3.level(1)
    rng = random.Random(23)
    checked = 0
    while checked < 40:
        rows = [[rng.randrange(3) for _ in range(2)] for _ in range(2)]
        try:
            x = group_point(tower_f3, rows)
        except ValueError:
            continue
        if not is_regular(x):
            continue
        g_rows = [[rng.randrange(3) for _ in range(2)] for _ in range(2)]
        try:
            g = group_point(tower_f3, g_rows)
        except ValueError:
            continue
        conj = group_point(
            tower_f3,
            mat_mul(lv, g.rows, mat_mul(lv, x.rows, mat_inv(lv, g.rows))),
        )
        assert gamma_std2.phi_regular(conj) == gamma_std2.phi_regular(x)
        checked += 1


def test_induction_consistency_exhaustive_gl2(tower_f3, std2):
    # flag route equals the identity-twist ordering route on rss classes
    tower = tower_f3
    for entries in itertools.product(range(3), repeat=4):
        rows = ((entries[0], entries[1]), (entries[2], entries[3]))
        try:
            x = group_point(tower, rows)
        except ValueError:
            continue
        fac = factor_monic(tower, x.charpoly_low())
        if any(mult > 1 for _, mult in fac):
            continue
        flag_route = induced_trace(std2, x)
        fiber_route = tower.ring.zero
        for pt in steinberg_fiber(tower, x.char, (0, 1)):
            fiber_route = fiber_route + std2.hyper_trace(
                expand_twisted_point(tower, pt, 1)
            )
        assert flag_route == fiber_route


def test_coset_vanishing_top_gl2(tower_f3, gamma_std2):
    x = group_point(tower_f3, [[0, 1], [1, 0]])
    coset, det_fiber = gamma_std2.coset_vanishing_top(x)
    assert coset.is_zero() and det_fiber.is_zero()
    with pytest.raises(NotTopStratum):
        gamma_std2.coset_vanishing_top(group_point(tower_f3, [[1, 1], [0, 1]]))


def test_coset_vanishing_top_gl3():
    tower = build_tower(2, 1, 3)
    std3 = validate_weight_system([3], "std")
    gamma = GammaTrace(TorusTraces(tower, std3))
    lv = tower.level(1)
    # companion of the irreducible cubic t^3 + t + 1
    x = group_point(tower, companion_matrix(lv, (0, 1, 1), 3))
    coset, det_fiber = gamma.coset_vanishing_top(x)
    assert coset.is_zero() and det_fiber.is_zero()


def test_gl3_phi_is_minus_psi_trace():
    # the natural normalization puts the unit (-1)^n in front of psi(tr)
    tower = build_tower(3, 1, 3)
    std3 = validate_weight_system([3], "std")
    gamma = GammaTrace(TorusTraces(tower, std3))
    lv = tower.level(1)
    rng = random.Random(31)
    checked = 0
    while checked < 25:
        rows = [[rng.randrange(3) for _ in range(3)] for _ in range(3)]
        try:
            x = group_point(tower, rows)
        except ValueError:
            continue
        if not is_regular(x):
            continue
        tr = lv.add(lv.add(rows[0][0], rows[1][1]), rows[2][2])
        assert gamma.phi_regular(x) == -tower.psi(tr)
        checked += 1


def test_mutation_breaks_gl2_vanishing(tower_f3, std2):
    gamma_mut = GammaTrace(std2, weyl_sign=False)
    x = group_point(tower_f3, [[0, 1], [1, 0]])
    coset, _ = gamma_mut.coset_vanishing_top(x)
    assert coset == tower_f3.ring.from_int(2)  # frozen from the closed form


def test_levi_restriction_unit(tower_f3, gamma_std2, std2):
    for a, b in [(1, 2), (2, 1)]:
        s = levi_restriction_sum(gamma_std2, (a, b))
        assert s == std2.hyper_trace((a, b)) * 3
    with pytest.raises(NotComputableLocus):
        levi_restriction_sum(gamma_std2, (1, 1))


def test_phi_csv(tower_f3, gamma_std2):
    from gammasums.induction import phi_csv

    pts = [
        group_point(tower_f3, [[1, 0], [0, 2]]),
        group_point(tower_f3, [[0, 1], [1, 0]]),
    ]
    out = phi_csv(gamma_std2, pts)
    lines = out.strip().splitlines()
    assert lines[0] == "representative,denominator,coefficients"
    assert len(lines) == 3
