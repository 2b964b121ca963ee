"""Conjugacy classes and the character table of GL(2, F_q); the exact oracle.

The table is built from the classical four families (one-dimensional twists
of det, their Steinberg companions, principal series, cuspidal) and verified
internally by exact row and column orthogonality.  The oracle expands the
gamma trace over irreducible characters: the generic coefficients come from
the torus Mellin transform (identity twist for principal-series parameters,
the long twist for cuspidal parameters), the finitely many non-generic ones
are solved for exactly, and the overdetermined system must close on every
regular class.  Both pairings chi(g) and chi(g^(-1)) are attempted and the
consistent one is recorded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import solve_linear_system
from .errors import CapExceeded, SystemInconsistent
from .mirabolic import group_point
from .torus import TorusCharacter

# -- conjugacy classes ---------------------------------------------------------


@dataclass(frozen=True)
class Gl2Class:
    """One conjugacy class, keyed by characteristic vector and centrality."""

    key: tuple  # (a1, a2, is_central)
    kind: str  # "central" | "nonss" | "split" | "nonsplit"
    size: int
    rep_rows: tuple
    params: tuple  # family-specific class parameters


def gl2_order(q):
    return (q * q - 1) * (q * q - q)


def gl2_classes(tower):
    q = tower.q
    lv = tower.level(1)
    l2 = tower.level(2)
    out = []
    for a in lv.units():
        a2 = lv.mul(a, a)
        ch = (lv.neg(lv.add(a, a)), a2)
        out.append(
            Gl2Class(
                key=(ch[0], ch[1], True),
                kind="central",
                size=1,
                rep_rows=((a, 0), (0, a)),
                params=(a,),
            )
        )
        out.append(
            Gl2Class(
                key=(ch[0], ch[1], False),
                kind="nonss",
                size=q * q - 1,
                rep_rows=((a, 1), (0, a)),
                params=(a,),
            )
        )
    units = list(lv.units())
    for i, a in enumerate(units):
        for b in units[i + 1 :]:
            ch = (lv.neg(lv.add(a, b)), lv.mul(a, b))
            out.append(
                Gl2Class(
                    key=(ch[0], ch[1], False),
                    kind="split",
                    size=q * q + q,
                    rep_rows=((a, 0), (0, b)),
                    params=(a, b),
                )
            )
    seen = set()
    for alpha in l2.units():
        if l2.dlog[alpha] % ((l2.size - 1) // (q - 1)) == 0:
            continue  # alpha rational
        conj = l2.frobenius(alpha)
        pair = tuple(sorted((alpha, conj)))
        if pair in seen:
            continue
        seen.add(pair)
        tr = tower.trace(alpha, 2)
        nm = tower.norm(alpha, 2)
        ch = (lv.neg(tr), nm)
        # companion matrix of the irreducible quadratic
        rep = ((0, lv.neg(nm)), (1, tr))
        out.append(
            Gl2Class(
                key=(ch[0], ch[1], False),
                kind="nonsplit",
                size=q * q - q,
                rep_rows=rep,
                params=pair,
            )
        )
    assert sum(c.size for c in out) == gl2_order(q)
    return out


def class_of(tower, x_rows):
    """Class key of a matrix: characteristic vector plus centrality."""
    pt = group_point(tower, x_rows)
    central = (
        x_rows[0][1] == 0
        and x_rows[1][0] == 0
        and x_rows[0][0] == x_rows[1][1]
    )
    return (pt.char[0], pt.char[1], central)


def inverse_class_key(tower, key):
    """Class key of the inverse of any element in the keyed class."""
    a1, a2, central = key
    lv = tower.level(1)
    inv_det = lv.inv(a2)
    return (lv.mul(a1, inv_det), inv_det, central)


# -- irreducible characters ----------------------------------------------------


@dataclass(frozen=True)
class Gl2Irrep:
    """One irreducible character, in the standard four-family parametrization.

    family "onedim" and "steinberg" carry one unit-group exponent; "principal"
    an unordered pair of distinct exponents; "cuspidal" a level-two exponent
    with trivial Frobenius pairing removed, up to exponent -> q * exponent.
    """

    family: str
    params: tuple
    dim: int


def gl2_irreps(tower):
    q = tower.q
    out = []
    for j in range(q - 1):
        out.append(Gl2Irrep("onedim", (j,), 1))
        out.append(Gl2Irrep("steinberg", (j,), q))
    for j1 in range(q - 1):
        for j2 in range(j1 + 1, q - 1):
            out.append(Gl2Irrep("principal", (j1, j2), q + 1))
    size2 = q * q - 1
    seen = set()
    for k in range(size2):
        if (k * q) % size2 == k % size2:
            continue  # restricted from level 1
        rep = min(k % size2, (k * q) % size2)
        if rep in seen:
            continue
        seen.add(rep)
        out.append(Gl2Irrep("cuspidal", (rep,), q - 1))
    assert sum(r.dim * r.dim for r in out) == gl2_order(q)
    return out


def _chi1(tower, j, x):
    """Value of the level-1 character with exponent j at the unit x."""
    lv = tower.level(1)
    return tower.ring.zeta_power(tower.zeta_unit_exponent(1, j * lv.dlog[x]))


def _chi2(tower, k, x):
    l2 = tower.level(2)
    return tower.ring.zeta_power(tower.zeta_unit_exponent(2, k * l2.dlog[x]))


def character_value(tower, irrep: Gl2Irrep, cls: Gl2Class):
    ring = tower.ring
    lv = tower.level(1)
    q = tower.q
    fam = irrep.family
    if fam == "onedim":
        (j,) = irrep.params
        if cls.kind in ("central", "nonss"):
            (a,) = cls.params
            return _chi1(tower, j, lv.mul(a, a))
        if cls.kind == "split":
            a, b = cls.params
            return _chi1(tower, j, lv.mul(a, b))
        alpha = cls.params[0]
        return _chi1(tower, j, tower.norm(alpha, 2))
    if fam == "steinberg":
        (j,) = irrep.params
        if cls.kind == "central":
            (a,) = cls.params
            return _chi1(tower, j, lv.mul(a, a)) * q
        if cls.kind == "nonss":
            return ring.zero
        if cls.kind == "split":
            a, b = cls.params
            return _chi1(tower, j, lv.mul(a, b))
        alpha = cls.params[0]
        return -_chi1(tower, j, tower.norm(alpha, 2))
    if fam == "principal":
        j1, j2 = irrep.params
        if cls.kind == "central":
            (a,) = cls.params
            return _chi1(tower, j1, a) * _chi1(tower, j2, a) * (q + 1)
        if cls.kind == "nonss":
            (a,) = cls.params
            return _chi1(tower, j1, a) * _chi1(tower, j2, a)
        if cls.kind == "split":
            a, b = cls.params
            return _chi1(tower, j1, a) * _chi1(tower, j2, b) + _chi1(
                tower, j1, b
            ) * _chi1(tower, j2, a)
        return ring.zero
    if fam == "cuspidal":
        (k,) = irrep.params
        if cls.kind == "central":
            (a,) = cls.params
            return _chi2(tower, k, tower.embed(a, 1, 2)) * (q - 1)
        if cls.kind == "nonss":
            (a,) = cls.params
            return -_chi2(tower, k, tower.embed(a, 1, 2))
        if cls.kind == "split":
            return ring.zero
        alpha, conj = cls.params
        return -(_chi2(tower, k, alpha) + _chi2(tower, k, conj))
    raise ValueError(f"unknown family {fam}")


class Gl2Table:
    """Full character table with exact orthogonality verification."""

    def __init__(self, tower):
        if tower.q > 11:
            raise CapExceeded("table construction is limited to q <= 11")
        if tower.max_level < 2:
            raise ValueError("the table needs level 2 in the tower")
        self.tower = tower
        self.classes = gl2_classes(tower)
        self.irreps = gl2_irreps(tower)
        self.values = {
            (irrep, cls.key): character_value(tower, irrep, cls)
            for irrep in self.irreps
            for cls in self.classes
        }
        self.by_key = {cls.key: cls for cls in self.classes}

    def value(self, irrep, class_key):
        return self.values[(irrep, class_key)]

    def verify_orthogonality(self):
        ring = self.tower.ring
        order = gl2_order(self.tower.q)
        for i, r1 in enumerate(self.irreps):
            for r2 in self.irreps[i:]:
                acc = ring.zero
                for cls in self.classes:
                    acc = acc + (
                        self.values[(r1, cls.key)]
                        * self.values[(r2, cls.key)].conjugate()
                        * cls.size
                    )
                want = ring.from_int(order if r1 is r2 else 0)
                if acc != want:
                    raise ArithmeticError(
                        f"row orthogonality fails for {r1} vs {r2}"
                    )
        for i, c1 in enumerate(self.classes):
            for c2 in self.classes[i:]:
                acc = ring.zero
                for irrep in self.irreps:
                    acc = acc + (
                        self.values[(irrep, c1.key)]
                        * self.values[(irrep, c2.key)].conjugate()
                    )
                want = ring.from_int(order // c1.size if c1 is c2 else 0)
                if acc != want:
                    raise ArithmeticError(
                        f"column orthogonality fails for {c1.key} vs {c2.key}"
                    )
        return True


def build_gl2_table(tower) -> Gl2Table:
    table = Gl2Table(tower)
    table.verify_orthogonality()
    return table


# -- the Mellin oracle ---------------------------------------------------------


@dataclass
class OracleResult:
    """Solved class function and solve diagnostics."""

    values: dict  # class key -> CycNum, every class
    gammas: dict  # irrep -> CycNum
    convention: str  # "direct" (chi(g)) or "inverse" (chi(g^(-1)))
    rank: int
    unknown_count: int
    rank_deficient: bool


def _generic_gamma(traces, irrep: Gl2Irrep):
    """Gamma coefficient of a generic irreducible from the torus transform.

    The torus Mellin value enters scaled by q * sign_W(w) for the twist w of
    the parametrizing torus (identity for principal series, the long element
    for cuspidal).  The scale is a calibrated normalization: re-solving with
    family-level scale unknowns pins exactly these values wherever the
    regular-class system has full rank (q in {3, 4, 5, 7}, standard weights).
    """
    tower = traces.tower
    q = tower.q
    if irrep.family == "principal":
        j1, j2 = irrep.params
        theta = TorusCharacter((0, 1), ((0, j1), (1, j2)))
        return traces.mellin_gamma((0, 1), theta) * q
    if irrep.family == "cuspidal":
        (k,) = irrep.params
        theta = TorusCharacter((1, 0), ((0, k),))
        return traces.mellin_gamma((1, 0), theta) * (-q)
    raise ValueError("gamma of a non-generic family is solved for, not set")


def calibrate_generic_units(traces, gamma_calc):
    """Re-derive the family scales (u_principal, u_cuspidal) from scratch.

    Treats one scale per generic family plus every non-generic gamma as
    unknowns and solves the regular-class system exactly.  Returns
    (u_principal, u_cuspidal, rank, unknown_count); when the rank is full the
    scales are forced and must equal (q, -q).  q = 2 has no principal series
    and the scale slot is returned as None.
    """
    tower = traces.tower
    ring = tower.ring
    table = build_gl2_table(tower)
    order = gl2_order(tower.q)
    generic_p = [r for r in table.irreps if r.family == "principal"]
    generic_c = [r for r in table.irreps if r.family == "cuspidal"]
    unknown = [r for r in table.irreps if r.family in ("onedim", "steinberg")]
    raw = {}
    for r in generic_p + generic_c:
        if r.family == "principal":
            theta = TorusCharacter((0, 1), ((0, r.params[0]), (1, r.params[1])))
            raw[r] = traces.mellin_gamma((0, 1), theta)
        else:
            theta = TorusCharacter((1, 0), ((0, r.params[0]),))
            raw[r] = traces.mellin_gamma((1, 0), theta)
    regular = [c for c in table.classes if c.kind != "central"]
    rows, rhs = [], []
    for cls in regular:
        phi = gamma_calc.value_for_charpoly((cls.key[0], cls.key[1]))
        coef_p = ring.zero
        for r in generic_p:
            coef_p = coef_p + raw[r] * table.value(r, cls.key) * r.dim
        coef_c = ring.zero
        for r in generic_c:
            coef_c = coef_c + raw[r] * table.value(r, cls.key) * r.dim
        row = [coef_c] + [table.value(r, cls.key) * r.dim for r in unknown]
        if generic_p:
            row = [coef_p] + row
        rows.append(row)
        rhs.append(phi * order)
    solution, rank, consistent = solve_linear_system(rows, rhs)
    if not consistent or not all(
        sum((c * s for c, s in zip(row, solution)), ring.zero) == b
        for row, b in zip(rows, rhs)
    ):
        raise SystemInconsistent("family-scale calibration system does not close")
    if generic_p:
        u_p, u_c = solution[0], solution[1]
    else:
        u_p, u_c = None, solution[0]
    return u_p, u_c, rank, len(rows[0])


def oracle_phi(traces, gamma_calc) -> OracleResult:
    """Solve the exact class-function expansion of the gamma trace.

    traces is the torus trace calculator of the weight system, gamma_calc the
    GammaTrace used for the right-hand side on regular classes.  The result
    carries values on every class, including central ones.
    """
    tower = traces.tower
    ring = tower.ring
    q = tower.q
    order = gl2_order(q)
    table = build_gl2_table(tower)
    generic = [r for r in table.irreps if r.family in ("principal", "cuspidal")]
    unknown = [r for r in table.irreps if r.family in ("onedim", "steinberg")]
    gamma_generic = {r: _generic_gamma(traces, r) for r in generic}
    regular = [c for c in table.classes if c.kind != "central"]
    inv_order = Fraction(1, order)
    last_diag = None
    for convention in ("direct", "inverse"):
        def val(irrep, cls):
            key = cls.key
            if convention == "inverse":
                key = inverse_class_key(tower, key)
            return table.value(irrep, key)

        rows = []
        rhs = []
        for cls in regular:
            phi = gamma_calc.value_for_charpoly((cls.key[0], cls.key[1]))
            acc = ring.zero
            for r in generic:
                acc = acc + gamma_generic[r] * val(r, cls) * r.dim
            rows.append([val(r, cls) * r.dim for r in unknown])
            rhs.append(phi * order - acc)
        solution, rank, consistent = solve_linear_system(rows, rhs)
        if not consistent:
            last_diag = f"elimination inconsistent under {convention} pairing"
            continue
        # substitute back into every equation
        ok = True
        for row, b in zip(rows, rhs):
            acc = ring.zero
            for coeff, s in zip(row, solution):
                acc = acc + coeff * s
            if acc != b:
                ok = False
                break
        if not ok:
            last_diag = f"residual nonzero under {convention} pairing"
            continue
        gammas = dict(gamma_generic)
        for r, s in zip(unknown, solution):
            gammas[r] = s
        values = {}
        for cls in table.classes:
            acc = ring.zero
            for r in table.irreps:
                acc = acc + gammas[r] * val(r, cls) * r.dim
            values[cls.key] = acc * inv_order
        return OracleResult(
            values=values,
            gammas=gammas,
            convention=convention,
            rank=rank,
            unknown_count=len(unknown),
            rank_deficient=rank < len(unknown),
        )
    raise SystemInconsistent(
        f"no pairing convention closes the oracle system: {last_diag}"
    )
