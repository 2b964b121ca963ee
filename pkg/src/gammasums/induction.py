"""Flag-variety induction traces and the gamma trace on the regular locus.

For a regular-semisimple element the induced trace can be computed two ways:
summing the torus trace over stable full flags, or summing over orderings of
the eigenvalue multiset that are fixed by a Weyl twist of Frobenius.  The
gamma trace averages the normalized twisted stalk traces over the Weyl group
and the matching Steinberg-fiber orderings; it depends on the element only
through its characteristic polynomial, is defined exactly on the regular
locus (cyclic elements, which includes everything with squarefree
characteristic polynomial), and refuses to return values anywhere else.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import CapExceeded, NotComputableLocus, NotTopStratum
from .matrices import (
    char_coeffs_to_poly,
    mat_mul,
    mat_vec,
    pol_divmod,
    pol_eval_embedded,
)
from .mirabolic import GroupPoint, group_point, stratum_index, u_q_matrix
from .torus import perm_cycles, twisted_point

# -- subspaces and flags ------------------------------------------------------


def _echelon_columns(lv, vectors):
    """Column-reduced echelon basis of the span, as a canonical tuple."""
    rows = [list(v) for v in vectors]
    basis = []
    for v in rows:
        for b in basis:
            lead = next(i for i, c in enumerate(b) if c)
            if v[lead]:
                f = v[lead]
                v = [lv.sub(a, lv.mul(f, c)) for a, c in zip(v, b)]
        if any(v):
            lead = next(i for i, c in enumerate(v) if c)
            inv = lv.inv(v[lead])
            v = [lv.mul(inv, c) for c in v]
            basis.append(v)
            basis.sort(key=lambda b: next(i for i, c in enumerate(b) if c))
            # re-reduce upper entries for canonical form
            for i, b in enumerate(basis):
                for j, other in enumerate(basis):
                    if i != j:
                        lead = next(k for k, c in enumerate(other) if c)
                        if b[lead]:
                            f = b[lead]
                            basis[i] = [
                                lv.sub(a, lv.mul(f, c)) for a, c in zip(b, other)
                            ]
                            b = basis[i]
    return tuple(tuple(b) for b in basis)


def _in_span(lv, basis, v):
    v = list(v)
    for b in basis:
        lead = next(i for i, c in enumerate(b) if c)
        if v[lead]:
            f = v[lead]
            v = [lv.sub(a, lv.mul(f, c)) for a, c in zip(v, b)]
    return not any(v)


def enumerate_lines(tower, n):
    """Canonical representatives of the lines of F_q^n."""
    lv = tower.level(1)
    out = []
    seen = set()
    for v in itertools.product(lv.elements(), repeat=n):
        if not any(v):
            continue
        basis = _echelon_columns(lv, [v])
        if basis not in seen:
            seen.add(basis)
            out.append(basis)
    return out


def full_flags(tower, n):
    """All full flags of F_q^n as tuples of echelon bases (n <= 3)."""
    if n > 3:
        raise CapExceeded("flag enumeration is limited to n <= 3")
    lv = tower.level(1)
    lines = enumerate_lines(tower, n)
    if n == 1:
        return [(basis,) for basis in lines]
    if n == 2:
        return [(basis,) for basis in lines]
    flags = []
    for line in lines:
        seen = set()
        for v in itertools.product(lv.elements(), repeat=n):
            if not any(v) or _in_span(lv, line, v):
                continue
            plane = _echelon_columns(lv, [line[0], v])
            if plane not in seen:
                seen.add(plane)
                flags.append((line, plane))
    return flags


def flag_is_stable(lv, g_rows, flag):
    for basis in flag:
        for b in basis:
            if not _in_span(lv, basis, mat_vec(lv, g_rows, b)):
                return False
    return True


def flag_fixed_points(g: GroupPoint):
    """All rational g-stable full flags (n <= 3)."""
    lv = g.level()
    return [f for f in full_flags(g.tower, g.n) if flag_is_stable(lv, g.rows, f)]


def flag_grading(g: GroupPoint, flag):
    """Scalars by which g acts on the successive flag quotients."""
    lv = g.level()
    n = g.n
    full = tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))
    chain = list(flag) + [full]
    out = []
    prev = ()
    for basis in chain:
        vec = next(b for b in basis if not _in_span(lv, prev, b))
        img = mat_vec(lv, g.rows, vec)

        def _reduce(v):
            v = list(v)
            for b in prev:
                lead = next(i for i, c in enumerate(b) if c)
                if v[lead]:
                    f = v[lead]
                    v = [lv.sub(a, lv.mul(f, c)) for a, c in zip(v, b)]
            return v

        # img = t * vec mod prev; compare the reductions mod prev
        red_img = _reduce(img)
        red_vec = _reduce(vec)
        lead = next(i for i, c in enumerate(red_vec) if c)
        out.append(lv.mul(red_img[lead], lv.inv(red_vec[lead])))
        prev = _echelon_columns(lv, list(prev) + [vec])
    return tuple(out)


def induced_trace(traces, g: GroupPoint):
    """Flag-sum trace of the induced object at g.

    The degree shift is d = n^2 - n, which is even for every n, so the global
    sign is +1; it is written out anyway to keep the normalization visible.
    """
    tower = g.tower
    sign = (-1) ** (g.n * g.n - g.n)
    total = tower.ring.zero
    for flag in flag_fixed_points(g):
        total = total + traces.hyper_trace(flag_grading(g, flag))
    return total * sign


# -- characteristic polynomial roots and Steinberg fibers ---------------------


def factor_monic(tower, poly_low):
    """Irreducible factors (with multiplicity) of a monic polynomial over F_q."""
    lv = tower.level(1)
    factors = []
    rem = tuple(poly_low)
    deg = len(rem) - 1
    e = 1
    while len(rem) > 1:
        found = False
        for tail in itertools.product(lv.elements(), repeat=e):
            cand = tuple(tail) + (1,)
            quot, r = pol_divmod(lv, rem, cand)
            if not any(r):
                mult = 1
                rem = quot
                while True:
                    quot, r = pol_divmod(lv, rem, cand)
                    if any(r):
                        break
                    mult += 1
                    rem = quot
                factors.append((cand, mult))
                found = True
                break
        if not found:
            e += 1
            if e > deg:
                raise ArithmeticError("factorization ran past the degree")
    return factors


def root_multiset(tower, char_coeffs):
    """Roots of the characteristic vector as (level, element) with repetition."""
    poly = char_coeffs_to_poly(char_coeffs)
    out = []
    for fac, mult in factor_monic(tower, poly):
        e = len(fac) - 1
        if e > tower.max_level:
            raise CapExceeded(f"roots live at level {e}, above the tower bound")
        lv = tower.level(e)
        root = next(
            x for x in lv.elements() if pol_eval_embedded(tower, fac, 1, x, e) == 0
        )
        orbit = [root]
        for _ in range(e - 1):
            orbit.append(lv.frobenius(orbit[-1]))
        for r in orbit:
            out.extend([(e, r)] * mult)
    return out


def steinberg_fiber(tower, char_coeffs, w):
    """Orderings of the root multiset fixed by the w-twist of Frobenius.

    Each ordering is returned as a TwistedTorusPoint; repeated roots
    contribute set-theoretic points only (no multiplicity).
    """
    roots = root_multiset(tower, char_coeffs)
    n = len(w)
    if len(roots) != n:
        raise ValueError("root multiset size differs from the twist size")
    cycles = perm_cycles(w)
    points = []
    seen = set()
    for perm in set(itertools.permutations(roots, n)):
        ok = True
        assignment = {}
        for cyc in cycles:
            ell = len(cyc)
            lev0, val0 = perm[cyc[0]]
            if ell % lev0:
                ok = False
                break
            lv = tower.level(ell)
            cur = tower.embed(val0, lev0, ell)
            assignment[cyc[0]] = cur
            for idx in cyc[1:]:
                cur = lv.frobenius(cur)
                lev_i, val_i = perm[idx]
                if ell % lev_i or tower.embed(val_i, lev_i, ell) != cur:
                    ok = False
                    break
            if not ok:
                break
            # close the cycle: value must return to the start
            if lv.frobenius(cur) != assignment[cyc[0]]:
                ok = False
                break
        if not ok:
            continue
        pt = twisted_point(tower, w, assignment)
        if pt not in seen:
            seen.add(pt)
            points.append(pt)
    points.sort(key=lambda p: p.values)
    return points


# -- the gamma trace on the regular locus -------------------------------------


def minimal_polynomial_degree(x: GroupPoint) -> int:
    """Degree of the minimal polynomial, found among monic charpoly divisors."""
    lv = x.level()
    poly = x.charpoly_low()
    n = x.n
    for deg in range(1, n + 1):
        for tail in itertools.product(lv.elements(), repeat=deg):
            cand = tuple(tail) + (1,)
            _, rem = pol_divmod(lv, poly, cand)
            if any(rem):
                continue
            if _annihilates(x, cand):
                return deg
    return n


def _annihilates(x: GroupPoint, poly_low):
    lv = x.level()
    n = x.n
    acc = [[0] * n for _ in range(n)]
    power = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    for c in poly_low:
        if c:
            for i in range(n):
                for j in range(n):
                    acc[i][j] = lv.add(acc[i][j], lv.mul(c, power[i][j]))
        power = mat_mul(lv, power, x.rows)
    return not any(any(row) for row in acc)


def is_regular(x: GroupPoint) -> bool:
    return minimal_polynomial_degree(x) == x.n


class GammaTrace:
    """The gamma trace function on the regular locus of GL(n).

    Values are computed per characteristic vector as the Weyl average of the
    normalized twisted traces over Steinberg-fiber orderings, scaled by the
    global constant kappa = (-1)^(n^2-n) = +1.  weyl_sign=False switches to
    the untwisted descent (the mutation control); everything else is shared.
    """

    def __init__(self, traces, weyl_sign=True):
        self.traces = traces
        self.tower = traces.tower
        self.ws = traces.ws
        self.weyl_sign = weyl_sign
        self._by_char = {}
        if len(self.ws.shape) != 1:
            raise ValueError("the gamma trace needs a single-factor shape")
        self.n = self.ws.shape[0]

    def value_for_charpoly(self, char_coeffs) -> object:
        key = tuple(char_coeffs)
        if key in self._by_char:
            return self._by_char[key]
        tower = self.tower
        weyl = self.ws.weyl()
        kappa = (-1) ** (self.n * self.n - self.n)
        total = tower.ring.zero
        for w in weyl:
            for pt in steinberg_fiber(tower, key, w):
                total = total + self.traces.twisted_stalk_trace(
                    pt, weyl_sign=self.weyl_sign
                )
        value = total * Fraction(kappa, len(weyl))
        self._by_char[key] = value
        return value

    def phi_regular(self, x: GroupPoint):
        if not is_regular(x):
            raise NotComputableLocus(
                "gamma trace requested off the regular locus"
            )
        return self.value_for_charpoly(x.char)

    def coset_vanishing_top(self, x: GroupPoint):
        """Sum of the gamma trace over the left U_Q coset of a top-stratum point.

        Returns (coset_sum, det_fiber_sum): the direct sum over U_Q
        translates, and the same number recomputed as a sum over
        characteristic vectors with the same determinant coefficient.  Both
        must be exactly zero.
        """
        tower = self.tower
        lv = tower.level(1)
        n = self.n
        if stratum_index(x) != n:
            raise NotTopStratum("coset vanishing needs a top-stratum point")
        coset = tower.ring.zero
        seen_chars = set()
        for v in itertools.product(lv.elements(), repeat=n - 1):
            ux = group_point(tower, mat_mul(lv, u_q_matrix(tower, n, v), x.rows))
            if stratum_index(ux) != n:
                raise NotTopStratum("left translation left the top stratum")
            coset = coset + self.phi_regular(ux)
            seen_chars.add(ux.char)
        det_fiber = tower.ring.zero
        for lead in itertools.product(lv.elements(), repeat=n - 1):
            char = tuple(lead) + (x.char[-1],)
            det_fiber = det_fiber + self.value_for_charpoly(char)
        if len(seen_chars) != tower.q ** (n - 1):
            raise NotTopStratum("coset does not biject onto the det fiber")
        return coset, det_fiber


def phi_csv(gamma: GammaTrace, points):
    """CSV dump of (representative, gamma trace as a coefficient vector)."""
    lines = ["representative,denominator,coefficients"]
    for x in points:
        value = gamma.phi_regular(x)
        rep = " ".join(str(c) for row in x.rows for c in row)
        coeffs = " ".join(str(v) for v in value.num)
        lines.append(f"{rep},{value.den},{coeffs}")
    return "\n".join(lines) + "\n"


def levi_restriction_sum(gamma: GammaTrace, t_coords):
    """Sum of the gamma trace over upper-triangular translates of a torus point.

    For a diagonal point with distinct entries every translate is regular, and
    the sum must be a fixed unit times the torus trace at the point.
    """
    tower = gamma.tower
    lv = tower.level(1)
    n = gamma.n
    if len(set(t_coords)) != n:
        raise NotComputableLocus("the torus point must have distinct entries")
    diag = tuple(
        tuple(t_coords[i] if i == j else 0 for j in range(n)) for i in range(n)
    )
    positions = [(i, j) for i in range(n) for j in range(n) if i < j]
    total = tower.ring.zero
    for vals in itertools.product(lv.elements(), repeat=len(positions)):
        rows = [list(r) for r in diag]
        for (i, j), v in zip(positions, vals):
            rows[i][j] = v
        u_mat = [
            [1 if i == j else (rows[i][j] if i < j else 0) for j in range(n)]
            for i in range(n)
        ]
        for i in range(n):
            u_mat[i][i] = 1
        ut = mat_mul(lv, tuple(tuple(r) for r in u_mat), diag)
        total = total + gamma.phi_regular(group_point(tower, ut))
    return total
