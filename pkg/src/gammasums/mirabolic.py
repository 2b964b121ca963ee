"""Mirabolic geometry of GL(n): strata, companion normalization, coset sums.

The stratum of an invertible matrix x is the dimension m of the span of
e_1, x e_1, x^2 e_1, ...; the stratification is preserved by left translation
under the first-row unipotent group U_Q and by conjugation under the
stabilizer Q_1 of e_1.  Every stratum-m point is Q_1-conjugate to a block
matrix whose top-left m x m block is the companion matrix of its
characteristic-polynomial factor, and the off-diagonal block is uniquely a
sum v_1 + v_{m-1} x_E - x_F v_{m-1} with v_1 concentrated in the first row
and v_{m-1} vanishing in the last row; the solver below walks that triangular
structure from the bottom row upward.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapExceeded, NotCyclic, NotNormalized, SolverSingular
from .matrices import (
    char_coeffs_to_poly,
    charpoly,
    mat_identity,
    mat_inv,
    mat_mul,
    mat_rank,
    mat_vec,
    pol_divmod,
    pol_mul,
    poly_to_char_coeffs,
)


@dataclass(frozen=True)
class GroupPoint:
    """An invertible n x n matrix over F_q with cached characteristic data."""

    tower: object
    n: int
    rows: tuple
    char: tuple  # (a_1, ..., a_n)

    def level(self):
        return self.tower.level(1)

    def det(self):
        d = self.char[-1]
        return self.level().neg(d) if self.n % 2 else d

    def charpoly_low(self):
        return char_coeffs_to_poly(self.char)


def group_point(tower, rows) -> GroupPoint:
    rows = tuple(tuple(r) for r in rows)
    n = len(rows)
    lv = tower.level(1)
    char = charpoly(lv, rows)
    det = lv.neg(char[-1]) if n % 2 else char[-1]
    if det == 0:
        raise ValueError("matrix is singular")
    return GroupPoint(tower, n, rows, char)


def stratum_index(x: GroupPoint) -> int:
    """Dimension of the span of e_1 under powers of x."""
    lv = x.level()
    n = x.n
    basis = []
    v = tuple(1 if i == 0 else 0 for i in range(n))
    for _ in range(n):
        red = _reduce_against(lv, basis, v)
        if not any(red):
            break
        basis.append(_normalize_vec(lv, red))
        v = mat_vec(lv, x.rows, v)
    return len(basis)


def _reduce_against(lv, basis, v):
    v = list(v)
    for b in basis:
        lead = next(i for i, c in enumerate(b) if c)
        if v[lead]:
            f = v[lead]
            v = [lv.sub(a, lv.mul(f, c)) for a, c in zip(v, b)]
    return v


def _normalize_vec(lv, v):
    lead = next(i for i, c in enumerate(v) if c)
    inv = lv.inv(v[lead])
    return tuple(lv.mul(inv, c) for c in v)


def krylov_basis(x: GroupPoint):
    """The vectors e_1, x e_1, ..., up to the stratum dimension."""
    lv = x.level()
    n = x.n
    out = []
    reduced = []
    v = tuple(1 if i == 0 else 0 for i in range(n))
    for _ in range(n):
        red = _reduce_against(lv, reduced, v)
        if not any(red):
            break
        reduced.append(_normalize_vec(lv, red))
        out.append(v)
        v = mat_vec(lv, x.rows, v)
    return out


def companion_matrix(level, a, m=None):
    """Companion matrix with characteristic coefficients a = (a_1, ..., a_m)."""
    m = m if m is not None else len(a)
    rows = [[0] * m for _ in range(m)]
    for i in range(1, m):
        rows[i][i - 1] = 1
    for i in range(m):
        rows[i][m - 1] = level.neg(a[m - 1 - i])
    return tuple(tuple(r) for r in rows)


def is_companion(level, block):
    m = len(block)
    for i in range(m):
        for j in range(m - 1):
            want = 1 if i == j + 1 else 0
            if block[i][j] != want:
                return False
    return True


def companion_normalize(level, x_f):
    """Unique g with g e_1 = e_1 and g^(-1) x_f g in companion form.

    The columns of g are the cyclic basis e_1, x_f e_1, ...; raises NotCyclic
    when e_1 is not cyclic for x_f.
    """
    m = len(x_f)
    cols = []
    reduced = []
    v = tuple(1 if i == 0 else 0 for i in range(m))
    for _ in range(m):
        red = _reduce_against(level, reduced, v)
        if not any(red):
            raise NotCyclic("e_1 is not a cyclic vector for the block")
        reduced.append(_normalize_vec(level, red))
        cols.append(v)
        v = mat_vec(level, x_f, v)
    g = tuple(tuple(cols[j][i] for j in range(m)) for i in range(m))
    comp = mat_mul(level, mat_inv(level, g), mat_mul(level, x_f, g))
    a = charpoly(level, x_f)
    if comp != companion_matrix(level, a, m):
        raise ArithmeticError("cyclic-basis conjugation is not companion")
    return g, a


def normalize_stratum(x: GroupPoint):
    """Conjugate x into block form with a companion top-left block.

    Returns (h, y) where h fixes e_1 and y = h^(-1) x h has the shape
    [[companion, *], [0, x_E]] with the companion block of size equal to the
    stratum of x.
    """
    lv = x.level()
    n = x.n
    kry = krylov_basis(x)
    m = len(kry)
    cols = list(kry)
    red_rows = []
    for c in cols:
        red_rows.append(_normalize_vec(lv, _reduce_against(lv, red_rows, c)))
    for i in range(n):
        e = tuple(1 if k == i else 0 for k in range(n))
        red = _reduce_against(lv, red_rows, e)
        if any(red):
            red_rows.append(_normalize_vec(lv, red))
            cols.append(e)
        if len(cols) == n:
            break
    h = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    y = mat_mul(lv, mat_inv(lv, h), mat_mul(lv, x.rows, h))
    return h, group_point(x.tower, y), m


@dataclass(frozen=True)
class StratumData:
    """Coordinates of a normalized stratum point.

    Reassembly multiplies [I v1; 0 I][I vm1; 0 I][diag(companion, x_E)]
    [I -vm1; 0 I] and must reproduce the normalized matrix exactly.
    """

    m: int
    g_f: tuple  # the Q_1 conjugator used to reach the normalized form
    a: tuple  # (a_1, ..., a_m)
    x_e: tuple
    v1: tuple  # first-row block, shape 1 x (n-m)
    vm1: tuple  # shape m x (n-m), last row zero

    def reassemble(self, tower):
        lv = tower.level(1)
        n = self.m + len(self.x_e)
        m = self.m
        comp = companion_matrix(lv, self.a, m)

        def unip(block):
            rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            for i in range(m):
                for j in range(n - m):
                    rows[i][m + j] = block[i][j]
            return tuple(tuple(r) for r in rows)

        v1_full = tuple(
            tuple(self.v1[0][j] if i == 0 else 0 for j in range(n - m))
            for i in range(m)
        )
        mid = [[0] * n for _ in range(n)]
        for i in range(m):
            for j in range(m):
                mid[i][j] = comp[i][j]
        for i in range(n - m):
            for j in range(n - m):
                mid[m + i][m + j] = self.x_e[i][j]
        mid = tuple(tuple(r) for r in mid)
        neg_vm1 = tuple(tuple(lv.neg(c) for c in row) for row in self.vm1)
        out = mat_mul(lv, unip(v1_full), mat_mul(lv, unip(self.vm1), mid))
        out = mat_mul(lv, out, unip(neg_vm1))
        return out


def _blocks(x: GroupPoint, m):
    rows = x.rows
    n = x.n
    x_f = tuple(tuple(rows[i][j] for j in range(m)) for i in range(m))
    y = tuple(tuple(rows[i][j] for j in range(m, n)) for i in range(m))
    lower = tuple(tuple(rows[i][j] for j in range(m)) for i in range(m, n))
    x_e = tuple(tuple(rows[i][j] for j in range(m, n)) for i in range(m, n))
    return x_f, y, lower, x_e


def _check_normalized(x: GroupPoint, m):
    lv = x.level()
    x_f, y, lower, x_e = _blocks(x, m)
    if any(any(row) for row in lower):
        raise NotNormalized("lower-left block is not zero")
    if not is_companion(lv, x_f):
        raise NotNormalized("top-left block is not a companion matrix")
    return x_f, y, x_e


def bernstein_coords(x: GroupPoint, m=None) -> StratumData:
    """Unique (a, x_E, v_1, v_{m-1}) coordinates of a normalized point.

    Solves y = v_1 + v_{m-1} x_E - x_F v_{m-1} row by row from the bottom:
    row m gives -v[m-1], each higher row i gives v[i-1] = v[i] x_E - y[i],
    and row 1 then determines v_1.  The filtration structure makes every step
    forced, so the solution exists and is unique for every x_E.
    """
    if m is None:
        m = stratum_index(x)
    lv = x.level()
    x_f, y, x_e = _check_normalized(x, m)
    n = x.n
    k = n - m
    if k == 0:
        data = StratumData(
            m=m,
            g_f=mat_identity(n),
            a=charpoly(lv, x_f),
            x_e=(),
            v1=((),),
            vm1=(),
        )
        return data
    vm1 = [[0] * k for _ in range(m)]
    if m >= 2:
        vm1[m - 2] = [lv.neg(c) for c in y[m - 1]]
        for i in range(m - 1, 1, -1):
            row_above = [
                lv.sub(acc, yc)
                for acc, yc in zip(_row_times_mat(lv, vm1[i - 1], x_e), y[i - 1])
            ]
            vm1[i - 2] = row_above
    # the block product puts v1 to the left of diag(x_F, x_E), so the first
    # row reads y[0] = (v1 + vm1[0]) x_E and v1 = y[0] x_E^(-1) - vm1[0]
    xe_inv = mat_inv(lv, x_e)
    v1 = [
        lv.sub(_row_times_mat(lv, y[0], xe_inv)[j], vm1[0][j]) for j in range(k)
    ]
    data = StratumData(
        m=m,
        g_f=mat_identity(n),
        a=charpoly(lv, x_f),
        x_e=x_e,
        v1=(tuple(v1),),
        vm1=tuple(tuple(r) for r in vm1),
    )
    if data.reassemble(x.tower) != x.rows:
        raise SolverSingular("coordinate solve failed to reproduce the point")
    return data


def _row_times_mat(lv, row, mat):
    k = len(mat)
    return [
        _dot(lv, row, [mat[t][j] for t in range(k)]) for j in range(len(mat[0]))
    ] if k else [0] * len(row)


def _dot(lv, a, b):
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = lv.add(acc, lv.mul(x, y))
    return acc


def lemma_translation_map(lv, x_f, x_e, v1_row, vm1):
    """The translation (v_1, v_{m-1}) -> v_1 + v_{m-1} x_E - x_F v_{m-1}.

    v1_row is the first row of a Hom(E, F_1) element, vm1 a full m x k block
    with zero last row.  Used by the brute-force simple-transitivity check.
    """
    m = len(x_f)
    k = len(v1_row)
    out = [[0] * k for _ in range(m)]
    for j in range(k):
        out[0][j] = v1_row[j]
    for i in range(m):
        row_vx = _row_times_mat(lv, vm1[i], x_e) if k else []
        for j in range(k):
            acc = lv.add(out[i][j], row_vx[j])
            for t in range(m):
                if x_f[i][t] and vm1[t][j]:
                    acc = lv.sub(acc, lv.mul(x_f[i][t], vm1[t][j]))
            out[i][j] = acc
    return tuple(tuple(r) for r in out)


# -- left U_Q cosets and characteristic polynomials ---------------------------


def u_q_matrix(tower, n, v):
    """The unipotent with first row (1, v) and identity elsewhere."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for j, c in enumerate(v):
        rows[0][j + 1] = c
    return tuple(tuple(r) for r in rows)


def u_q_vectors(tower, n):
    lv = tower.level(1)
    return itertools.product(lv.elements(), repeat=n - 1)


def coset_charpoly(x: GroupPoint, v, m=None):
    """Coefficients of c(u_L x_F) by the closed shift formula, with checks.

    x must be normalized (companion top block).  v has length n-1 and
    parametrizes the unipotent u whose first row is (1, -v_1, ..., -v_{n-1});
    with that orientation the first m-1 entries feed the plus-sign shift
    formula b_r = a_r + sum a_i v_{r-i} + v_r, b_m = a_m.  Returns (b, info)
    where info carries the direct product-factorization verification data.
    """
    if m is None:
        m = stratum_index(x)
    lv = x.level()
    x_f, _, x_e = _check_normalized(x, m)
    n = x.n
    a = charpoly(lv, x_f)
    v = tuple(v)
    if len(v) != n - 1:
        raise ValueError("U_Q vector must have length n-1")
    v_l = v[: m - 1]
    b = list(a)
    for r in range(1, m):
        acc = a[r - 1]
        for i in range(1, r):
            acc = lv.add(acc, lv.mul(a[i - 1], v_l[r - i - 1]))
        acc = lv.add(acc, v_l[r - 1])
        b[r - 1] = acc
    b = tuple(b)
    # direct verification data, with the matching row orientation
    neg_v = tuple(lv.neg(c) for c in v)
    ux = mat_mul(lv, u_q_matrix(x.tower, n, neg_v), x.rows)
    c_ux = charpoly(lv, ux)
    u_l_mat = tuple(
        tuple(
            (1 if i == j else 0)
            if not (i == 0 and 1 <= j < m)
            else lv.neg(v_l[j - 1])
            for j in range(m)
        )
        for i in range(m)
    )
    c_ulxf = charpoly(lv, mat_mul(lv, u_l_mat, x_f))
    prod = pol_mul(
        lv, char_coeffs_to_poly(c_ulxf), char_coeffs_to_poly(charpoly(lv, x_e))
    ) if n > m else char_coeffs_to_poly(c_ulxf)
    info = {
        "c_ux": c_ux,
        "c_ulxf": c_ulxf,
        "factorization_ok": char_coeffs_to_poly(c_ux) == prod,
        "closed_formula_ok": b == c_ulxf,
        "bm_fixed": b[m - 1] == a[m - 1],
    }
    return b, info


def coset_rank(x: GroupPoint) -> int:
    """Rank of the linear map v -> c(ux) - c(x) on the U_Q row space."""
    lv = x.level()
    n = x.n
    base = x.char
    rows = []
    for i in range(n - 1):
        v = tuple(1 if j == i else 0 for j in range(n - 1))
        ux = mat_mul(lv, u_q_matrix(x.tower, n, v), x.rows)
        delta = tuple(lv.sub(c, b) for c, b in zip(charpoly(lv, ux), base))
        rows.append(delta)
    return mat_rank(lv, tuple(rows))


# -- orbit census -------------------------------------------------------------


def q1_elements(tower, n):
    """All elements of the stabilizer of e_1 in GL(n, F_q)."""
    lv = tower.level(1)
    out = []
    for rest in itertools.product(lv.elements(), repeat=n * (n - 1)):
        rows = []
        it = iter(rest)
        for i in range(n):
            row = [1 if i == 0 else 0]
            row.extend(next(it) for _ in range(n - 1))
            rows.append(tuple(row))
        mat = tuple(rows)
        try:
            inv = mat_inv(lv, mat)
        except ValueError:
            continue
        out.append((mat, inv))
    return out


def matrices_with_charpoly(tower, n, a):
    """Every invertible matrix over F_q with characteristic vector a."""
    lv = tower.level(1)
    out = []
    for entries in itertools.product(lv.elements(), repeat=n * n):
        rows = tuple(
            tuple(entries[i * n + j] for j in range(n)) for i in range(n)
        )
        if charpoly(lv, rows) == tuple(a):
            out.append(rows)
    return out


def orbit_census(tower, n, a):
    """Partition of the charpoly fiber into conjugation orbits of Q_1.

    Returns a dict with orbit sizes grouped by stratum.  Enumeration caps
    follow the desk-scale contract: n <= 3 with q <= 3, or n = 2 with q <= 7.
    """
    q = tower.q
    if not ((n <= 3 and q <= 3) or (n == 2 and q <= 7)):
        raise CapExceeded(f"census enumeration not supported for n={n}, q={q}")
    if a[-1] == 0:
        raise ValueError("characteristic vector must have unit constant term")
    lv = tower.level(1)
    pool = set(matrices_with_charpoly(tower, n, a))
    group = q1_elements(tower, n)
    orbits = []
    while pool:
        seed = min(pool)
        orbit = set()
        for g, ginv in group:
            orbit.add(mat_mul(lv, g, mat_mul(lv, seed, ginv)))
        pool -= orbit
        m = stratum_index(group_point(tower, seed))
        orbits.append({"stratum": m, "size": len(orbit)})
    orbits.sort(key=lambda o: (o["stratum"], o["size"]))
    by_stratum = {}
    for o in orbits:
        by_stratum.setdefault(o["stratum"], []).append(o["size"])
    return {"orbits": orbits, "by_stratum": by_stratum, "count": len(orbits)}


def monic_divisors(tower, a, m):
    """Monic degree-m divisors with unit constant term of the a-polynomial."""
    lv = tower.level(1)
    poly = char_coeffs_to_poly(a)
    n = len(a)
    out = []
    units = [u for u in lv.elements() if u != 0]
    for tail in itertools.product(lv.elements(), repeat=m - 1) if m > 1 else [()]:
        for const in units:
            cand = (const,) + tuple(tail) + (1,)
            quot, rem = pol_divmod(lv, poly, cand)
            if not any(rem):
                quot_t = tuple(quot) + (0,) * (n - m + 1 - len(quot))
                out.append((cand, quot_t))
    if m == 0:
        out = [((1,), poly)]
    return out


def chart_orbit_count(tower, a_t_vec, k, cpoly_low):
    """Orbit count on the stratum chart for one factorization c = a_t * c'.

    Pairs (x', y) with x' in GL(k), c(x') = c' and y an m x k block, under the
    unipotent-times-Levi chart group: g conjugates x' and multiplies y on the
    right by g^(-1); the unipotent part translates y by x_F v - v x' with
    x_F the companion matrix of a_t.  Without the translations the count
    would be wrong whenever a_t and c' are coprime.
    """
    lv = tower.level(1)
    m = len(a_t_vec)
    if k == 0:
        return 1 if tuple(cpoly_low) == (1,) else 0
    target = tuple(cpoly_low)
    mats = []
    gl = []
    for entries in itertools.product(lv.elements(), repeat=k * k):
        rows = tuple(
            tuple(entries[i * k + j] for j in range(k)) for i in range(k)
        )
        if char_coeffs_to_poly(charpoly(lv, rows)) == target:
            mats.append(rows)
        try:
            inv = mat_inv(lv, rows)
        except ValueError:
            continue
        gl.append((rows, inv))
    x_f = companion_matrix(lv, a_t_vec, m)
    translations = [
        tuple(tuple(v[i * k + j] for j in range(k)) for i in range(m))
        for v in itertools.product(lv.elements(), repeat=m * k)
    ]
    pool = set()
    for mrows in mats:
        for y in translations:
            pool.add((mrows, y))
    count = 0
    while pool:
        seed_m, seed_y = min(pool)
        orbit = set()
        for g, ginv in gl:
            new_x = mat_mul(lv, g, mat_mul(lv, seed_m, ginv))
            yg = mat_mul(lv, seed_y, ginv)
            for v in translations:
                shift = mat_mul(lv, x_f, v)
                shift2 = mat_mul(lv, v, new_x)
                new_y = tuple(
                    tuple(
                        lv.sub(lv.add(yg[i][j], shift[i][j]), shift2[i][j])
                        for j in range(k)
                    )
                    for i in range(m)
                )
                orbit.add((new_x, new_y))
        pool -= orbit
        count += 1
    return count


def matrix_to_json(rows):
    """Row-major integer array serialization of a matrix."""
    return [list(r) for r in rows]


def census_csv(tower, n, char_vectors):
    """CSV census report: one line per (charpoly, stratum) with orbit sizes."""
    lines = ["charpoly,stratum,orbit_sizes"]
    for a in char_vectors:
        result = orbit_census(tower, n, a)
        for m in sorted(result["by_stratum"]):
            sizes = "+".join(str(s) for s in result["by_stratum"][m])
            poly = " ".join(str(c) for c in a)
            lines.append(f"{poly},{m},{sizes}")
    return "\n".join(lines) + "\n"


def census_prediction(tower, n, a):
    """Orbit count predicted by the stratification recursion.

    Strata are matched to monic factorizations c = a_t * c' with deg a_t = m;
    the stratum-m orbit count is recomputed on the block chart (companion
    piece, smaller group element, off-diagonal block) under the chart group,
    a different enumeration from the full-size conjugation census.
    """
    per_stratum = {}
    for m in range(1, n + 1):
        total = 0
        for a_t, quot in monic_divisors(tower, a, m):
            a_t_vec = poly_to_char_coeffs(a_t)
            total += chart_orbit_count(tower, a_t_vec, n - m, quot)
        if total:
            per_stratum[m] = total
    return {"by_stratum": per_stratum, "count": sum(per_stratum.values())}


# -- maximal parabolic rank classification -----------------------------------


def parabolic_rank_classify(x: GroupPoint, split):
    """Rank of the lower-left block and a Levi conjugation to pivot form.

    The pivot form puts 1's on the antidiagonal of the top-right r x r corner
    of the lower-left block (so rank one means a single 1 in the corner) and
    zeros elsewhere.  Returns (rank, (g1, g2), representative GroupPoint);
    the point lies in the parabolic exactly when the rank is zero.
    """
    n1, n2 = split
    lv = x.level()
    n = x.n
    if n1 + n2 != n:
        raise ValueError("split does not match the matrix size")
    c_block = tuple(tuple(x.rows[n1 + i][j] for j in range(n1)) for i in range(n2))
    rank_direct = mat_rank(lv, c_block) if n2 else 0
    if c_block == _pivot_form(n2, n1, rank_direct):
        return rank_direct, (mat_identity(n1), mat_identity(n2)), x
    a_mat, b_mat, r = _field_smith(lv, c_block)
    # a_mat * C * b_mat has identity in the leading r x r corner; permute
    # the columns so the pivots land on the antidiagonal of the top-right
    # r x r corner (rank one: a single 1 in the upper-right entry)
    col_perm = [[0] * n1 for _ in range(n1)]
    used = set()
    for i in range(r):
        col_perm[i][n1 - r + i] = 1
        used.add(n1 - r + i)
    free = [j for j in range(n1) if j not in used]
    for i, j in zip(range(r, n1), free):
        col_perm[i][j] = 1
    col_perm = tuple(tuple(rw) for rw in col_perm)
    b_full = mat_mul(lv, b_mat, col_perm)
    g2 = a_mat
    g1 = mat_inv(lv, b_full)
    big = [[0] * n for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            big[i][j] = g1[i][j]
    for i in range(n2):
        for j in range(n2):
            big[n1 + i][n1 + j] = g2[i][j]
    big = tuple(tuple(rw) for rw in big)
    rep = mat_mul(lv, big, mat_mul(lv, x.rows, mat_inv(lv, big)))
    return r, (g1, g2), group_point(x.tower, rep)


def _pivot_form(n_rows, n_cols, r):
    rows = [[0] * n_cols for _ in range(n_rows)]
    for i in range(r):
        rows[i][n_cols - r + i] = 1
    return tuple(tuple(rw) for rw in rows)


def _field_smith(lv, c):
    """Invertible (A, B) with A C B = [[I_r, 0], [0, 0]]; returns (A, B, r)."""
    n_rows = len(c)
    n_cols = len(c[0]) if n_rows else 0
    a = [list(r) for r in mat_identity(n_rows)]
    b = [list(r) for r in mat_identity(n_cols)]
    m = [list(r) for r in c]
    r = 0
    for _ in range(min(n_rows, n_cols)):
        pivot = None
        for i in range(r, n_rows):
            for j in range(r, n_cols):
                if m[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if not pivot:
            break
        pi, pj = pivot
        m[r], m[pi] = m[pi], m[r]
        a[r], a[pi] = a[pi], a[r]
        for row in m:
            row[r], row[pj] = row[pj], row[r]
        for row in b:
            row[r], row[pj] = row[pj], row[r]
        inv = lv.inv(m[r][r])
        m[r] = [lv.mul(inv, v) for v in m[r]]
        a[r] = [lv.mul(inv, v) for v in a[r]]
        for i in range(n_rows):
            if i != r and m[i][r]:
                f = m[i][r]
                m[i] = [lv.sub(v, lv.mul(f, w)) for v, w in zip(m[i], m[r])]
                a[i] = [lv.sub(v, lv.mul(f, w)) for v, w in zip(a[i], a[r])]
        for j in range(n_cols):
            if j != r and m[r][j]:
                f = m[r][j]
                for row in m:
                    row[j] = lv.sub(row[j], lv.mul(f, row[r]))
                for row in b:
                    row[j] = lv.sub(row[j], lv.mul(f, row[r]))
        r += 1
    return (
        tuple(tuple(rw) for rw in a),
        tuple(tuple(rw) for rw in b),
        r,
    )
