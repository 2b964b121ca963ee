"""Weight systems on split tori and their exponential-sum trace functions.

A weight system records the multiset of integer weight vectors of a torus
representation together with the block structure of repeated weights and the
Weyl group of the ambient product of general linear groups.  The trace
operations all reduce to exact character sums:

  * hyper_trace       signed psi-sum over the fiber of the monomial map
  * twisted sums      fixed points of (slot permutation) o Frobenius on the
                      covering coordinates, with the Weyl descent
                      normalization sign_r(xi) * sign_W(w) on top of the raw
                      fixed-point sum
  * mellin_gamma      character-sum transform over a twisted torus, which
                      factorizes into Gauss sums along permutation orbits
  * sigma_fiber_sum   the sign-averaged determinant-fiber sum that must
                      vanish whenever a factor has rank at least two

Coordinate convention: a Weyl element w acts by (w.t)_{w(i)} = t_i, and a
twisted point satisfies t_{w(i)} = t_i^q, so each w-cycle is determined by
one unit in the extension of degree equal to the cycle length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycNum
from .errors import (
    InvalidTwistedPoint,
    NotConstant,
    NotSigmaPositive,
    NotSurjective,
    NotWStable,
    TowerTooShallow,
)
from .fields import FieldTower, MultCharacter, gauss_sum

# -- permutations (tuples mapping position i to image perm[i]) --------------


def perm_identity(d):
    return tuple(range(d))


def perm_compose(a, b):
    """The permutation applying b first, then a."""
    return tuple(a[b[i]] for i in range(len(b)))


def perm_sign(w):
    seen = [False] * len(w)
    sign = 1
    for i in range(len(w)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = w[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_cycles(w):
    """Cycles of w, each starting at its smallest element."""
    seen = [False] * len(w)
    cycles = []
    for i in range(len(w)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = w[j]
        cycles.append(tuple(cyc))
    return cycles


def weyl_elements(shape):
    """All elements of prod S_{n_i} as permutations of the d coordinates."""
    blocks = []
    start = 0
    for n in shape:
        blocks.append(tuple(range(start, start + n)))
        start += n
    out = []
    per_block = [list(itertools.permutations(b)) for b in blocks]
    for combo in itertools.product(*per_block):
        w = [0] * start
        for block, image in zip(blocks, combo):
            for src, dst in zip(block, image):
                w[src] = dst
        out.append(tuple(w))
    return out


def weyl_block_elements(shape, j):
    """Elements of the factor S_{n_j}, acting trivially elsewhere."""
    d = sum(shape)
    start = sum(shape[:j])
    block = tuple(range(start, start + shape[j]))
    out = []
    for image in itertools.permutations(block):
        w = list(range(d))
        for src, dst in zip(block, image):
            w[src] = dst
        out.append(tuple(w))
    return out


# -- weight systems ----------------------------------------------------------


class WeightSystem:
    """Validated multiset of weights for a product of general linear groups."""

    def __init__(self, shape, weight_list, name=None):
        self.shape = tuple(shape)
        self.d = sum(self.shape)
        self.name = name
        pairs = sorted((tuple(v), int(mult)) for v, mult in weight_list)
        self.weights = tuple(pairs)
        slots = []
        blocks = {}
        for vec, mult in self.weights:
            blocks[vec] = tuple(range(len(slots), len(slots) + mult))
            slots.extend([vec] * mult)
        self.slots = tuple(slots)
        self.blocks = blocks
        self.r = len(slots)
        self.factor_coords = []
        start = 0
        for n in self.shape:
            self.factor_coords.append(tuple(range(start, start + n)))
            start += n

    def weyl(self):
        return weyl_elements(self.shape)

    def weight_image(self, w, vec):
        """The weight w.vec with (w.vec)_{w(i)} = vec_i."""
        out = [0] * self.d
        for i, c in enumerate(vec):
            out[w[i]] = c
        return tuple(out)

    def multiplicity_blocks(self):
        """Slot blocks of the repeated-weight subgroup (one tuple per weight)."""
        return [self.blocks[vec] for vec, _ in self.weights]

    def sigma_block_elements(self):
        """All slot permutations preserving each weight block."""
        per_block = [
            list(itertools.permutations(block)) for block in self.multiplicity_blocks()
        ]
        out = []
        for combo in itertools.product(*per_block):
            xi = [0] * self.r
            for block, image in zip(self.multiplicity_blocks(), combo):
                for src, dst in zip(block, image):
                    xi[src] = dst
            out.append(tuple(xi))
        return out

    def __repr__(self):
        label = self.name or "weights"
        return f"WeightSystem(shape={self.shape}, {label}, r={self.r})"


def _named_weights(shape, rep):
    if len(shape) != 1:
        raise ValueError("named representations need a single-factor shape")
    n = shape[0]
    if rep == "std":
        return [(tuple(1 if j == i else 0 for j in range(n)), 1) for i in range(n)]
    if rep == "sym2":
        out = []
        for i in range(n):
            for j in range(i, n):
                vec = [0] * n
                vec[i] += 1
                vec[j] += 1
                out.append((tuple(vec), 1))
        return out
    if rep == "sym3" and n == 2:
        return [((3, 0), 1), ((2, 1), 1), ((1, 2), 1), ((0, 3), 1)]
    if rep.startswith("std*det^"):
        k = int(rep.split("^", 1)[1])
        return [
            (tuple((1 if j == i else 0) + k for j in range(n)), 1) for i in range(n)
        ]
    raise ValueError(f"unknown representation name {rep!r}")


def _integer_rank(rows, d):
    mat = [[Fraction(c) for c in row] for row in rows]
    rank = 0
    for col in range(d):
        pivot = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        lead = mat[rank][col]
        mat[rank] = [v / lead for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def validate_weight_system(shape, rep) -> WeightSystem:
    """Expand, validate and freeze a weight system.

    rep is either a representation name ("std", "sym2", "sym3", "std*det^k")
    or an explicit list of (vector, multiplicity) pairs.
    """
    shape = tuple(int(n) for n in shape)
    if any(n < 1 for n in shape):
        raise ValueError("factor sizes must be positive")
    d = sum(shape)
    name = rep if isinstance(rep, str) else None
    if isinstance(rep, str):
        weight_list = _named_weights(shape, rep)
    else:
        weight_list = [(tuple(int(c) for c in v), int(mult)) for v, mult in rep]
    ws = WeightSystem(shape, weight_list, name=name)
    for vec, _ in ws.weights:
        if len(vec) != d:
            raise ValueError("weight vector length differs from torus rank")
        total = 0
        for coords in ws.factor_coords:
            s = sum(vec[i] for i in coords)
            if s < 0:
                raise NotSigmaPositive(
                    f"weight {vec} has negative sum on a factor block"
                )
            total += s
        if total <= 0:
            raise NotSigmaPositive(f"weight {vec} pairs non-positively with det")
    mult_map = dict(ws.weights)
    for w in ws.weyl():
        image = {}
        for vec, mult in ws.weights:
            img = ws.weight_image(w, vec)
            image[img] = image.get(img, 0) + mult
        if image != mult_map:
            raise NotWStable("weight multiset is not Weyl stable")
    rank = _integer_rank([list(vec) for vec in ws.slots], d)
    if rank < d:
        raise NotSurjective(
            f"weight matrix has rank {rank} < {d}: the representation "
            "factors through det"
        )
    return ws


def weyl_lift(ws: WeightSystem, w):
    """Canonical lift of a Weyl element to a slot permutation, with sign data.

    The lift sends the slot block of each weight onto the block of its Weyl
    image, preserving order inside blocks.  Returns (xi, sign_r, sign_W, eps)
    where eps = sign_r(xi) * sign_W(w).
    """
    xi = [None] * ws.r
    for vec, _ in ws.weights:
        src = ws.blocks[vec]
        dst = ws.blocks[ws.weight_image(w, vec)]
        for s, t in zip(src, dst):
            xi[s] = t
    xi = tuple(xi)
    sr = perm_sign(xi)
    sw = perm_sign(w)
    return xi, sr, sw, sr * sw


# -- twisted torus points ----------------------------------------------------


@dataclass(frozen=True)
class TwistedTorusPoint:
    """A point of the w-twisted torus, one unit per w-cycle.

    values holds (cycle representative, unit in F_{q^len}) pairs, sorted by
    representative; the full coordinate tuple is recovered by going around
    each cycle with Frobenius.
    """

    w: tuple
    values: tuple

    def cycle_map(self):
        return dict(self.values)


def twisted_point(tower: FieldTower, w, assignments) -> TwistedTorusPoint:
    """Build and validate a twisted point from a {cycle rep: unit} mapping."""
    cycles = perm_cycles(w)
    values = []
    for cyc in cycles:
        rep = cyc[0]
        if rep not in assignments:
            raise InvalidTwistedPoint(f"missing value for cycle at {rep}")
        val = assignments[rep]
        if len(cyc) > tower.max_level:
            raise TowerTooShallow(
                f"cycle of length {len(cyc)} exceeds the tower bound"
            )
        if val == 0:
            raise InvalidTwistedPoint("twisted point coordinates must be units")
        values.append((rep, val))
    return TwistedTorusPoint(tuple(w), tuple(sorted(values)))


def enumerate_twisted_points(tower, w):
    """All points of the w-twisted torus over F_q."""
    cycles = perm_cycles(w)
    for cyc in cycles:
        if len(cyc) > tower.max_level:
            raise TowerTooShallow(
                f"cycle of length {len(cyc)} exceeds the tower bound"
            )
    unit_sets = [tower.level(len(c)).units() for c in cycles]
    for combo in itertools.product(*unit_sets):
        yield TwistedTorusPoint(
            tuple(w), tuple(sorted((c[0], v) for c, v in zip(cycles, combo)))
        )


def expand_twisted_point(tower, pt: TwistedTorusPoint, to_level):
    """Coordinates of the twisted point inside F_{q^to_level}."""
    w = pt.w
    coords = [0] * len(w)
    lv = tower.level(to_level)
    for cyc in perm_cycles(w):
        ell = len(cyc)
        if to_level % ell:
            raise TowerTooShallow(
                f"cycle length {ell} does not divide working level {to_level}"
            )
        val = tower.embed(pt.cycle_map()[cyc[0]], ell, to_level)
        cur = val
        for idx in cyc:
            coords[idx] = cur
            cur = lv.frobenius(cur)
    return tuple(coords)


def point_block_norm(tower, pt: TwistedTorusPoint, coords):
    """Product of the point's coordinates over a coordinate block, in F_q."""
    lv1 = tower.level(1)
    out = 1
    coord_set = set(coords)
    for cyc in perm_cycles(pt.w):
        if cyc[0] in coord_set:
            out = lv1.mul(out, tower.norm(pt.cycle_map()[cyc[0]], len(cyc)))
    return out


# -- torus characters --------------------------------------------------------


@dataclass(frozen=True)
class TorusCharacter:
    """Character of a twisted torus: one exponent per w-cycle."""

    w: tuple
    exponents: tuple  # ((cycle rep, exponent), ...) sorted by rep

    def value(self, tower, pt: TwistedTorusPoint) -> CycNum:
        if pt.w != self.w:
            raise ValueError("character and point live on different twists")
        cmap = pt.cycle_map()
        total = 0
        n = tower.ring.conductor
        for cyc in perm_cycles(self.w):
            rep = cyc[0]
            ell = len(cyc)
            e = dict(self.exponents)[rep]
            lv = tower.level(ell)
            total += (n // (lv.size - 1)) * (e * lv.dlog[cmap[rep]])
        return tower.ring.zeta_power(total)

    def inverse(self) -> "TorusCharacter":
        return TorusCharacter(
            self.w, tuple((rep, -e) for rep, e in self.exponents)
        )

    def is_trivial(self) -> bool:
        return all(e == 0 for _, e in self.exponents)


def trivial_character(tower, w) -> TorusCharacter:
    return TorusCharacter(tuple(w), tuple((c[0], 0) for c in perm_cycles(w)))


def torus_characters(tower, w):
    """All characters of the w-twisted torus."""
    cycles = perm_cycles(w)
    ranges = [range(tower.q ** len(c) - 1) for c in cycles]
    for combo in itertools.product(*ranges):
        yield TorusCharacter(
            tuple(w), tuple((c[0], e) for c, e in zip(cycles, combo))
        )


def rational_character(tower, exponents) -> TorusCharacter:
    """Character of the untwisted torus from one exponent per coordinate."""
    d = len(exponents)
    return TorusCharacter(
        perm_identity(d),
        tuple((i, e % (tower.q - 1)) for i, e in enumerate(exponents)),
    )


# -- trace calculator --------------------------------------------------------


class TorusTraces:
    """Exact trace-function sums for one weight system over one tower.

    All methods are pure; results are memoized per instance.
    """

    def __init__(self, tower: FieldTower, ws: WeightSystem):
        self.tower = tower
        self.ws = ws
        self._hyper = {}
        self._local = {}
        self._mellin_unit = None
        lv = tower.level(1)
        # completion lookup for the last slot of the rational fiber
        last = ws.slots[-1]
        table = {}
        for u in lv.units():
            key = tuple(lv.power(u, c) if c else 1 for c in last)
            table.setdefault(key, []).append(u)
        self._last_slot_table = table

    # -- rational points ------------------------------------------------

    def hyper_trace(self, t) -> CycNum:
        """Signed psi-sum over the fiber of the monomial map above t in T(F_q)."""
        t = tuple(t)
        if t in self._hyper:
            return self._hyper[t]
        tower, ws = self.tower, self.ws
        lv = tower.level(1)
        if any(v == 0 for v in t):
            raise ValueError("torus points have unit coordinates")
        d, r = ws.d, ws.r
        counts = {}
        lead_slots = ws.slots[:-1]
        for xs in itertools.product(lv.units(), repeat=r - 1):
            coords = list(t)
            s = 0
            for x, vec in zip(xs, lead_slots):
                s = lv.add(s, x)
                for j in range(d):
                    c = vec[j]
                    if c:
                        coords[j] = lv.mul(coords[j], lv.power(x, -c))
            for x_last in self._last_slot_table.get(tuple(coords), ()):
                sv = lv.add(s, x_last)
                counts[sv] = counts.get(sv, 0) + 1
        total = tower.ring.zero
        for s, c in counts.items():
            total = total + tower.psi(s) * c
        if r % 2:
            total = -total
        self._hyper[t] = total
        return total

    # -- twisted points ---------------------------------------------------

    def twisted_local_sum(self, xi, pt: TwistedTorusPoint) -> CycNum:
        """Raw fixed-point sum over {x : xi(F(x)) = x, p(x) = t}.

        One free unit per xi-cycle; the signed psi-sum of the coordinate sums
        of the matching fiber points.  This is the natural (un-normalized)
        twisted local term.
        """
        key = (tuple(xi), pt)
        if key in self._local:
            return self._local[key]
        tower, ws = self.tower, self.ws
        xi_cycles = perm_cycles(xi)
        w_cycles = perm_cycles(pt.w)
        work = 1
        for c in xi_cycles + w_cycles:
            work = work * len(c) // _gcd(work, len(c))
        if work > tower.max_level:
            raise TowerTooShallow(
                f"needs level {work}, tower bound is {tower.max_level}"
            )
        lv = tower.level(work)
        order = lv.size - 1
        q = tower.q
        target = expand_twisted_point(tower, pt, work)
        target_dlog = [lv.dlog[v] for v in target]
        d, r = ws.d, ws.r
        # per xi-cycle: slot indices in cycle order and their q-power shifts
        cyc_data = []
        for cyc in xi_cycles:
            ell = len(cyc)
            shifts = [pow(q, k, order) for k in range(ell)]
            cyc_data.append((cyc, ell, shifts))
        unit_dlogs = []
        for cyc, ell, _ in cyc_data:
            lvl = tower.level(ell)
            step = order // (lvl.size - 1)
            unit_dlogs.append([lvl.dlog[u] * step for u in lvl.units()])
        counts = {}
        for combo in itertools.product(*unit_dlogs):
            slot_dlog = [0] * r
            for (cyc, ell, shifts), base in zip(cyc_data, combo):
                for k, slot in enumerate(cyc):
                    slot_dlog[slot] = (base * shifts[k]) % order
            ok = True
            for j in range(d):
                acc = 0
                for s in range(r):
                    c = ws.slots[s][j]
                    if c:
                        acc += c * slot_dlog[s]
                if (acc - target_dlog[j]) % order:
                    ok = False
                    break
            if not ok:
                continue
            s_elt = 0
            for s in range(r):
                s_elt = lv.add(s_elt, lv.exp[slot_dlog[s]])
            s1 = tower.unembed(s_elt, work, 1)
            counts[s1] = counts.get(s1, 0) + 1
        total = tower.ring.zero
        for s, c in counts.items():
            total = total + tower.psi(s) * c
        if r % 2:
            total = -total
        self._local[key] = total
        return total

    def twisted_stalk_trace(
        self, pt: TwistedTorusPoint, xi=None, weyl_sign=True
    ) -> CycNum:
        """Descent-normalized twisted trace at a twisted torus point.

        With the default canonical lift this depends only on pt.w; an explicit
        alternative lift must differ from the canonical one by a block-
        preserving slot permutation, and the result is unchanged.  Setting
        weyl_sign=False drops the sign_W factor from the normalization (the
        deliberately wrong, untwisted descent used by mutation controls).
        """
        if xi is None:
            xi, sr, sw, _ = weyl_lift(self.ws, pt.w)
        else:
            for s in range(self.ws.r):
                want = self.ws.weight_image(pt.w, self.ws.slots[s])
                if self.ws.slots[xi[s]] != want:
                    raise ValueError("xi is not a lift of the point's twist")
            sr = perm_sign(xi)
            sw = perm_sign(pt.w)
        eps = sr * (sw if weyl_sign else 1)
        total = self.twisted_local_sum(xi, pt)
        return total if eps == 1 else -total

    # -- Mellin transform --------------------------------------------------

    def mellin_gamma(self, w, theta: TorusCharacter) -> CycNum:
        """Sum of twisted traces against theta^(-1) over the w-twisted torus."""
        inv = theta.inverse()
        total = self.tower.ring.zero
        for pt in enumerate_twisted_points(self.tower, w):
            total = total + self.twisted_stalk_trace(pt) * inv.value(self.tower, pt)
        return total

    def mellin_orbit_characters(self, w, theta: TorusCharacter):
        """The characters theta o (orbit cocharacter), one per lift cycle.

        For the canonical lift xi of w, the fixed points of xi o F are one
        unit alpha per xi-cycle; pushing alpha through the monomial map and
        theta gives a multiplicative character of F_{q^len}^x whose exponent
        is computed here by pure dlog bookkeeping.
        """
        tower, ws = self.tower, self.ws
        q = tower.q
        xi, _, _, _ = weyl_lift(ws, w)
        theta_exp = dict(theta.exponents)
        out = []
        for cyc in perm_cycles(xi):
            ell = len(cyc)
            size = q**ell
            e_total = 0
            for wc in perm_cycles(w):
                rep = wc[0]
                m_c = 0
                for k, slot in enumerate(cyc):
                    c = ws.slots[slot][rep]
                    if c:
                        m_c += c * pow(q, k, size - 1)
                e_total += theta_exp[rep] * m_c
            out.append(MultCharacter(tower, ell, e_total))
        return out

    def mellin_reference(self, w, theta: TorusCharacter) -> CycNum:
        """Product of Gauss sums along lift cycles, times the frozen unit."""
        unit = self.mellin_unit()
        prod = unit
        for chi in self.mellin_orbit_characters(w, theta):
            prod = prod * gauss_sum(chi.conj())
        return prod

    def mellin_unit(self) -> CycNum:
        """Unit calibrated once from the identity twist and trivial character."""
        if self._mellin_unit is None:
            d = self.ws.d
            w = perm_identity(d)
            theta = trivial_character(self.tower, w)
            raw = self.tower.ring.one
            for chi in self.mellin_orbit_characters(w, theta):
                raw = raw * gauss_sum(chi.conj())
            self._mellin_unit = self.mellin_gamma(w, theta) / raw
        return self._mellin_unit

    # -- Kummer convolution -------------------------------------------------

    def kummer_convolution_scalar(self, chi: TorusCharacter) -> CycNum:
        """The constant (t_psi * chi)(x) / chi(x); raises NotConstant otherwise."""
        tower, ws = self.tower, self.ws
        lv = tower.level(1)
        d = ws.d
        points = [
            twisted_point(tower, perm_identity(d), dict(enumerate(t)))
            for t in itertools.product(lv.units(), repeat=d)
        ]
        traces = {pt: self.hyper_trace(expand_twisted_point(tower, pt, 1))
                  for pt in points}
        constant = None
        inv_chi = chi.inverse()
        for x in points:
            x_coords = expand_twisted_point(tower, x, 1)
            conv = tower.ring.zero
            for t in points:
                t_coords = expand_twisted_point(tower, t, 1)
                shifted = tuple(
                    lv.mul(lv.inv(tc), xc) for tc, xc in zip(t_coords, x_coords)
                )
                pt_shift = twisted_point(
                    tower, perm_identity(d), dict(enumerate(shifted))
                )
                conv = conv + traces[t] * chi.value(tower, pt_shift)
            ratio = conv * inv_chi.value(tower, x)
            if constant is None:
                constant = ratio
            elif ratio != constant:
                raise NotConstant(
                    "convolution against a character is not a character multiple"
                )
        return constant

    # -- determinant-fiber sign sum ------------------------------------------

    def sigma_fiber_sum(self, j, z) -> CycNum:
        """Average over the factor-j Weyl group of det-fiber twisted sums.

        Returns (1/|W_j|) * sum over w in W_j and twisted points with block-j
        determinant z of the normalized twisted trace.  Vanishes exactly when
        shape[j] >= 2.
        """
        ws, tower = self.ws, self.tower
        if ws.shape[j] < 2:
            raise ValueError("factor must have rank at least 2")
        if z == 0:
            raise ValueError("determinant value must be a unit")
        block = ws.factor_coords[j]
        elements = weyl_block_elements(ws.shape, j)
        total = tower.ring.zero
        for w in elements:
            for pt in enumerate_twisted_points(tower, w):
                if point_block_norm(tower, pt, block) == z:
                    total = total + self.twisted_stalk_trace(pt)
        return total * Fraction(1, len(elements))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
