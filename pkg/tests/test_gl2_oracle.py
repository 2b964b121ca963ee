import pytest

from gammasums.errors import CapExceeded
from gammasums.fields import build_tower, gauss_sum, MultCharacter
from gammasums.gl2 import (
    Gl2Table,
    build_gl2_table,
    calibrate_generic_units,
    class_of,
    gl2_classes,
    gl2_irreps,
    gl2_order,
    inverse_class_key,
    oracle_phi,
)
from gammasums.induction import GammaTrace
from gammasums.matrices import mat_inv
from gammasums.torus import TorusTraces, validate_weight_system


def test_class_census_q3(tower_f3):
    classes = gl2_classes(tower_f3)
    assert len(classes) == 8
    assert sum(c.size for c in classes) == gl2_order(3) == 48
    kinds = {}
    for c in classes:
        kinds[c.kind] = kinds.get(c.kind, 0) + 1
    assert kinds == {"central": 2, "nonss": 2, "split": 1, "nonsplit": 3}


def test_irrep_census_q3(tower_f3):
    irreps = gl2_irreps(tower_f3)
    assert len(irreps) == 8
    assert sum(r.dim**2 for r in irreps) == 48
    # dims: two one-dimensionals, two of dim q=3, one principal of dim q+1,
    # three cuspidals of dim q-1
    dims = sorted(r.dim for r in irreps)
    assert dims == [1, 1, 2, 2, 2, 3, 3, 4]


def test_trivial_character_row(tower_f3):
    table = build_gl2_table(tower_f3)
    triv = next(
        r for r in table.irreps if r.family == "onedim" and r.params == (0,)
    )
    for cls in table.classes:
        assert table.value(triv, cls.key) == tower_f3.ring.one
    steinberg = next(
        r for r in table.irreps if r.family == "steinberg" and r.params == (0,)
    )
    assert steinberg.dim == 3


@pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_orthogonality(p, f):
    tower = build_tower(p, f, 2)
    table = Gl2Table(tower)
    assert table.verify_orthogonality()


def test_table_cap():
    tower = build_tower(13, 1, 2)
    with pytest.raises(CapExceeded):
        build_gl2_table(tower)


def test_class_of_and_inverse(tower_f3):
    lv = tower_f3.level(1)
    key = class_of(tower_f3, ((1, 1), (0, 1)))
    assert key == (1, 1, False)
    assert class_of(tower_f3, ((2, 0), (0, 2)))[2] is True
    # inverse of diag(1,2) is diag(1,2)^-1 = diag(1,2) in F_3
    x = ((1, 0), (0, 2))
    inv_rows = mat_inv(lv, x)
    assert inverse_class_key(tower_f3, class_of(tower_f3, x)) == class_of(
        tower_f3, inv_rows
    )


@pytest.mark.parametrize("rep", ["std", "sym2", "std*det^1"])
def test_oracle_matches_geometry_q3(tower_f3, rep):
    ws = validate_weight_system([2], rep)
    traces = TorusTraces(tower_f3, ws)
    gamma = GammaTrace(traces)
    result = oracle_phi(traces, gamma)
    assert result.convention == "direct"
    assert not result.rank_deficient
    for cls in gl2_classes(tower_f3):
        if cls.kind == "central":
            continue
        assert result.values[cls.key] == gamma.value_for_charpoly(
            (cls.key[0], cls.key[1])
        )


def test_oracle_std_is_psi_trace(tower_f3):
    ws = validate_weight_system([2], "std")
    traces = TorusTraces(tower_f3, ws)
    result = oracle_phi(traces, GammaTrace(traces))
    lv = tower_f3.level(1)
    for cls in gl2_classes(tower_f3):
        if cls.kind == "central":
            continue
        assert result.values[cls.key] == tower_f3.psi(lv.neg(cls.key[0]))


def test_oracle_q2():
    tower = build_tower(2, 1, 2)
    ws = validate_weight_system([2], "std")
    traces = TorusTraces(tower, ws)
    result = oracle_phi(traces, GammaTrace(traces))
    # frozen values from the hand-solved rank-2 system: the cuspidal raw
    # transform is 2, scaled by -q; the two non-generic unknowns come out 2
    ring = tower.ring
    gammas = {r.family: g for r, g in result.gammas.items()}
    assert gammas["cuspidal"] == ring.from_int(-4)
    assert gammas["onedim"] == ring.from_int(2)
    assert gammas["steinberg"] == ring.from_int(2)


def test_calibration_pins_family_scales(tower_f3):
    ws = validate_weight_system([2], "std")
    traces = TorusTraces(tower_f3, ws)
    u_p, u_c, rank, n_unknowns = calibrate_generic_units(traces, GammaTrace(traces))
    assert rank == n_unknowns
    assert u_p == tower_f3.ring.from_int(3)
    assert u_c == tower_f3.ring.from_int(-3)


def test_principal_gamma_factors_into_gauss_sums(tower_f5):
    # gamma of a principal series = q * unit * g(conj chi_1) g(conj chi_2)
    ws = validate_weight_system([2], "std")
    traces = TorusTraces(tower_f5, ws)
    result = oracle_phi(traces, GammaTrace(traces))
    q = tower_f5.q
    for irrep, g_val in result.gammas.items():
        if irrep.family != "principal":
            continue
        j1, j2 = irrep.params
        prod = gauss_sum(MultCharacter(tower_f5, 1, -j1)) * gauss_sum(
            MultCharacter(tower_f5, 1, -j2)
        )
        assert g_val == prod * q
