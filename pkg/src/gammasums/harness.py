"""Verification suites, reports and the sweep drivers.

Each suite is a list of named exact checks over one configuration
(p, f, shape, representation).  Reports are deterministic: given the same
config they serialize byte-for-byte (timings are opt-in precisely because
they would break that), seeds are fixed and recorded, and exact values are
stored as cyclotomic coefficient vectors.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field

from .cyclotomic import CycNum
from .errors import (
    ConfigInvalid,
    GammasumsError,
    NotComputableLocus,
    TowerTooShallow,
    VanishingFailed,
)
from .fields import all_characters, build_tower, gauss_sum, kloosterman
from .gl2 import (
    build_gl2_table,
    calibrate_generic_units,
    class_of,
    gl2_classes,
    gl2_order,
    oracle_phi,
)
from .induction import (
    GammaTrace,
    factor_monic,
    induced_trace,
    is_regular,
    levi_restriction_sum,
    steinberg_fiber,
)
from .matrices import char_coeffs_to_poly, mat_inv, mat_mul
from .mirabolic import (
    bernstein_coords,
    census_prediction,
    companion_matrix,
    coset_charpoly,
    coset_rank,
    group_point,
    lemma_translation_map,
    normalize_stratum,
    orbit_census,
    parabolic_rank_classify,
    stratum_index,
    u_q_matrix,
)
from .torus import (
    TorusTraces,
    enumerate_twisted_points,
    expand_twisted_point,
    perm_compose,
    perm_identity,
    perm_sign,
    rational_character,
    torus_characters,
    twisted_point,
    validate_weight_system,
    weyl_lift,
)

DEFAULT_SEED = 1789
SUITE_NAMES = (
    "arith",
    "torus",
    "mirabolic",
    "induction",
    "gl2-main",
    "gl3-top",
    "oracle",
)

SUITE_STATEMENTS = {
    "arith": (
        "Gauss sums satisfy g(chi) g(conj chi) = chi(-1) q^m exactly and have "
        "complex magnitude q^(m/2); the Hasse-Davenport relation lifts them "
        "along norm maps; tower embeddings and generators are compatible."
    ),
    "torus": (
        "Hypergeometric traces agree with Kloosterman sums on one-dimensional "
        "tori; block permutations of repeated weights act on twisted local "
        "sums by the sign character and normalized twisted traces are "
        "lift-independent; Mellin transforms factor into Gauss sums along "
        "twist orbits after one unit calibration; convolution with any torus "
        "character is a scalar multiple of it; the sign-averaged determinant-"
        "fiber sum vanishes for every determinant value."
    ),
    "mirabolic": (
        "Left translation by the first-row unipotent group preserves the "
        "cyclic-span stratification; companion normalization and the "
        "triangular coordinate solve are exact bijections; the coset "
        "characteristic-polynomial shift formula matches direct computation, "
        "is linear, and has rank m-1 on the stratum of index m; orbit counts "
        "per characteristic polynomial match the stratification recursion; "
        "maximal-parabolic orbits are classified by the rank of the "
        "lower-left block."
    ),
    "induction": (
        "The flag-sum trace of the induced object equals the sum over "
        "twist-fixed orderings of the eigenvalue multiset; the gamma trace is "
        "conjugation invariant and, for the standard weights, a frozen unit "
        "times the additive character of the trace on the whole regular "
        "locus; restriction to the diagonal Levi is a frozen unit times the "
        "torus trace."
    ),
    "gl2-main": (
        "For every g outside the Borel of GL(2, F_q) the sum of the gamma "
        "trace over the unipotent coset vanishes exactly, computed both "
        "geometrically and through the character-table expansion, with "
        "pointwise agreement of the two routes on regular classes; replacing "
        "the sign-twisted Weyl descent by the untwisted one breaks the "
        "vanishing."
    ),
    "gl3-top": (
        "For top-stratum points of GL(3, F_q) outside the mirabolic subgroup "
        "the unipotent coset sum of the gamma trace vanishes exactly and "
        "agrees with its determinant-fiber recomputation; the sign-averaged "
        "determinant-fiber sums on the torus vanish for every determinant "
        "value."
    ),
    "oracle": (
        "The GL(2, F_q) character table is exactly orthogonal; the gamma "
        "trace expands over irreducible characters with generic coefficients "
        "given by torus Mellin transforms scaled by q times the twist sign, "
        "and the overdetermined regular-class system closes exactly."
    ),
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: object = None
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list = field(default_factory=list)
    seed: int = DEFAULT_SEED

    @property
    def passed(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "suite": self.suite,
            "params": self.params,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "value": serialize_value(c.value),
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }


def serialize_value(v):
    if v is None:
        return None
    if isinstance(v, CycNum):
        return {"conductor": v.ring.conductor, "den": v.den, "num": list(v.num)}
    if isinstance(v, (int, str, bool)):
        return v
    if isinstance(v, (list, tuple)):
        return [serialize_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): serialize_value(x) for k, x in sorted(v.items())}
    return str(v)


def emit(reports, fmt="json"):
    """Canonical serialization of a report list (sorted keys, no timestamps)."""
    if fmt == "json":
        payload = [r.to_dict() for r in reports]
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        lines = ["suite,check,passed,detail"]
        for r in reports:
            for c in r.checks:
                detail = c.detail.replace(",", ";").replace("\n", " ")
                lines.append(f"{r.suite},{c.name},{int(c.passed)},{detail}")
        return "\n".join(lines) + "\n"
    raise ConfigInvalid(f"unknown output format {fmt!r}")


# -- configuration --------------------------------------------------------------


def validate_config(raw) -> dict:
    if not isinstance(raw, dict):
        raise ConfigInvalid("config must be a JSON object")
    unknown_keys = set(raw) - {"p", "f", "shape", "rep", "suites", "caps", "seed"}
    if unknown_keys:
        raise ConfigInvalid(f"unknown config keys {sorted(unknown_keys)}")
    cfg = {
        "p": raw.get("p", 3),
        "f": raw.get("f", 1),
        "shape": list(raw.get("shape", [2])),
        "rep": raw.get("rep", "std"),
        "suites": list(raw.get("suites", ["arith"])),
        "caps": dict(raw.get("caps", {})),
        "seed": int(raw.get("seed", DEFAULT_SEED)),
    }
    if not isinstance(cfg["p"], int) or not isinstance(cfg["f"], int):
        raise ConfigInvalid("p and f must be integers")
    for s in cfg["suites"]:
        if s not in SUITE_NAMES:
            raise ConfigInvalid(f"unknown suite {s!r}")
    if not cfg["shape"] or any(
        not isinstance(n, int) or n < 1 for n in cfg["shape"]
    ):
        raise ConfigInvalid("shape must be a list of positive integers")
    cfg["caps"].setdefault("tower", max(2, max(cfg["shape"])))
    cfg["caps"].setdefault("enumeration", 1 << 24)
    cfg["caps"].setdefault("samples", 60)
    if ("gl2-main" in cfg["suites"] or "oracle" in cfg["suites"]) and cfg[
        "shape"
    ] != [2]:
        raise ConfigInvalid("gl2 suites need shape [2]")
    if "gl3-top" in cfg["suites"] and cfg["shape"] != [3]:
        raise ConfigInvalid("gl3-top needs shape [3]")
    q = cfg["p"] ** cfg["f"]
    if cfg["rep"] == "sym2" and q % 2 == 0:
        raise ConfigInvalid("sym2 suites run at odd q")
    return cfg


def _context(cfg):
    tower = build_tower(
        cfg["p"], cfg["f"], cfg["caps"]["tower"], cap=cfg["caps"]["enumeration"]
    )
    ws = validate_weight_system(cfg["shape"], cfg["rep"])
    return tower, ws


def _random_group_point(tower, n, rng):
    lv = tower.level(1)
    while True:
        rows = [[rng.randrange(lv.size) for _ in range(n)] for _ in range(n)]
        try:
            return group_point(tower, rows)
        except ValueError:
            continue


def _squarefree(tower, char_coeffs):
    return all(
        mult == 1
        for _, mult in factor_monic(tower, char_coeffs_to_poly(char_coeffs))
    )


# -- suite: arith ----------------------------------------------------------------


def suite_arith(cfg) -> list:
    checks = []
    tower, _ = _context(cfg)
    q = tower.q
    ring = tower.ring
    lv1 = tower.level(1)
    checks.append(
        CheckResult(
            "dlog-normalization", lv1.dlog[lv1.gen] == 1 and lv1.dlog[1] == 0
        )
    )
    ok = True
    for a in tower.levels:
        for b in tower.levels:
            if b % a or a == b:
                continue
            la, lb = tower.level(a), tower.level(b)
            if tower.embed(la.gen, a, b) != lb.power(
                lb.gen, (lb.size - 1) // (la.size - 1)
            ):
                ok = False
            for c in tower.levels:
                if c % b or c == b:
                    continue
                for x in la.elements():
                    via = tower.embed(tower.embed(x, a, b), b, c)
                    if via != tower.embed(x, a, c):
                        ok = False
    checks.append(CheckResult("embedding-compatibility", ok))
    ok = True
    for m in tower.levels:
        total = ring.zero
        for x in tower.level(m).elements():
            total = total + tower.psi(x, m)
        if not total.is_zero():
            ok = False
    checks.append(CheckResult("psi-orthogonality", ok))
    ok_exact = ok_float = True
    for m in (1, 2):
        if m not in tower.levels:
            continue
        size = q**m
        for chi in all_characters(tower, m):
            g = gauss_sum(chi)
            if chi.is_trivial():
                if g != ring.from_int(-1):
                    ok_exact = False
                continue
            minus_one = tower.level(m).neg(1)
            if g * gauss_sum(chi.conj()) != chi.value(minus_one) * size:
                ok_exact = False
            if abs(abs(g.complex_value()) - size**0.5) > 1e-9:
                ok_float = False
    checks.append(CheckResult("gauss-product-identity", ok_exact))
    checks.append(CheckResult("gauss-magnitude", ok_float))
    ok = True
    for chi in all_characters(tower, 1):
        if chi.is_trivial():
            continue
        g1 = gauss_sum(chi)
        for m in tower.levels:
            if m == 1 or m > 3:
                continue
            if (-g1) ** m != -gauss_sum(chi.lift(m)):
                ok = False
    checks.append(CheckResult("hasse-davenport", ok))
    rng = random.Random(cfg["seed"])
    ok = True
    triples = 200 if ring.degree <= 200 else 25
    for _ in range(triples):
        a, b, c = (
            ring.from_coeffs(
                [rng.randrange(-3, 4) for _ in range(ring.degree)],
                rng.randrange(1, 4),
            )
            for _ in range(3)
        )
        if (a + b) + c != a + (b + c) or a * (b + c) != a * b + a * c:
            ok = False
        if a.conjugate().conjugate() != a:
            ok = False
    checks.append(
        CheckResult("cyclotomic-ring-axioms", ok, detail=f"{triples} triples")
    )
    checks.append(
        CheckResult("kloosterman-arity-one", kloosterman(tower, 1, 1) == -tower.psi(1))
    )
    return checks


# -- suite: torus ----------------------------------------------------------------


def _aux_multiplicity_systems(cfg):
    """Weight systems with repeated weights, where the sign tests have content.

    Crossed one-dimensional systems need tower levels up to their arity, so
    only arities within the configured bound are included.
    """
    bound = cfg["caps"]["tower"]
    out = [
        (f"gm-crossed-{r}", validate_weight_system([1], [[(1,), r]]))
        for r in (2, 3)
        if r <= bound
    ]
    if cfg["shape"] == [2] and bound >= 2:
        out.append(
            ("std-doubled", validate_weight_system([2], [[(1, 0), 2], [(0, 1), 2]]))
        )
    return out


def suite_torus(cfg) -> list:
    checks = []
    tower, ws = _context(cfg)
    traces = TorusTraces(tower, ws)
    lv1 = tower.level(1)
    rng = random.Random(cfg["seed"])
    units = list(lv1.units())
    d = ws.d
    # hypergeometric trace vs Kloosterman on the one-dimensional torus
    ok = True
    for r in (1, 2, 3):
        aux = TorusTraces(tower, validate_weight_system([1], [[(1,), r]]))
        for t in units:
            if aux.hyper_trace((t,)) != kloosterman(tower, t, r):
                ok = False
    checks.append(CheckResult("hyper-equals-kloosterman", ok))
    # untwisted consistency
    ok = True
    for t in itertools.product(units, repeat=d):
        pt = twisted_point(tower, perm_identity(d), dict(enumerate(t)))
        if traces.twisted_stalk_trace(pt) != traces.hyper_trace(t):
            ok = False
    checks.append(CheckResult("identity-twist-consistency", ok))
    # sign action of block permutations (content needs repeated weights)
    ok = True
    for name, aux_ws in [("main", ws)] + _aux_multiplicity_systems(cfg):
        aux_tr = traces if aux_ws is ws else TorusTraces(tower, aux_ws)
        dd = aux_ws.d
        pts = list(itertools.product(units, repeat=dd))
        rng.shuffle(pts)
        for t in pts[:20]:
            pt = twisted_point(tower, perm_identity(dd), dict(enumerate(t)))
            base = aux_tr.hyper_trace(t)
            for xi in aux_ws.sigma_block_elements():
                want = base if perm_sign(xi) == 1 else -base
                if aux_tr.twisted_local_sum(xi, pt) != want:
                    ok = False
    checks.append(
        CheckResult(
            "block-permutation-sign-action",
            ok,
            detail="multiplicity-free blocks are vacuous; the crossed systems"
            " carry the content",
        )
    )
    # lift independence of the normalized twisted trace; lifts whose cycle
    # structure outruns the tower are skipped (their fibers need deeper
    # extensions), which still leaves at least two lifts per twist
    ok = True
    lift_counts = []
    for name, aux_ws in _aux_multiplicity_systems(cfg):
        aux_tr = TorusTraces(tower, aux_ws)
        sig = aux_ws.sigma_block_elements()
        for w in aux_ws.weyl():
            xi0, _, _, _ = weyl_lift(aux_ws, w)
            lifts = [perm_compose(xi0, tau) for tau in sig]
            pts = list(enumerate_twisted_points(tower, w))
            rng.shuffle(pts)
            tested = set()
            for pt in pts[:4]:
                ref = aux_tr.twisted_stalk_trace(pt)
                for xi in lifts:
                    try:
                        got = aux_tr.twisted_stalk_trace(pt, xi=xi)
                    except TowerTooShallow:
                        continue
                    tested.add(xi)
                    if got != ref:
                        ok = False
            lift_counts.append(len(tested))
    checks.append(
        CheckResult(
            "lift-independence",
            ok and all(c >= 2 for c in lift_counts),
            detail=f"lifts tested per twist: {sorted(set(lift_counts))}",
        )
    )
    # Mellin factorization for every twist and character
    ok = True
    unit = traces.mellin_unit()
    for w in ws.weyl():
        for theta in torus_characters(tower, w):
            if traces.mellin_gamma(w, theta) != traces.mellin_reference(w, theta):
                ok = False
    checks.append(
        CheckResult(
            "mellin-factorization",
            ok,
            value=unit,
            detail="unit frozen from the identity twist, trivial character",
        )
    )
    # Kummer convolution constancy for every character
    ok = True
    try:
        for exps in itertools.product(range(tower.q - 1), repeat=d):
            traces.kummer_convolution_scalar(rational_character(tower, exps))
    except GammasumsError:
        ok = False
    checks.append(CheckResult("kummer-convolution-constant", ok))
    # determinant-fiber sign vanishing
    ok = True
    ran = False
    for j, n in enumerate(ws.shape):
        if n < 2:
            continue
        ran = True
        for z in units:
            if not traces.sigma_fiber_sum(j, z).is_zero():
                ok = False
    checks.append(
        CheckResult(
            "sigma-fiber-vanishing",
            ok,
            detail="" if ran else "no factor of rank >= 2",
        )
    )
    return checks


# -- suite: mirabolic --------------------------------------------------------------


def suite_mirabolic(cfg) -> list:
    checks = []
    tower, _ = _context(cfg)
    if len(cfg["shape"]) != 1:
        raise ConfigInvalid("mirabolic suite needs a single-factor shape")
    n = cfg["shape"][0]
    q = tower.q
    lv = tower.level(1)
    rng = random.Random(cfg["seed"])
    samples = cfg["caps"]["samples"]
    # stratification stability under left unipotent translation
    ok = True
    if q ** (n * n) <= 1 << 16:
        pool = []
        for entries in itertools.product(lv.elements(), repeat=n * n):
            rows = tuple(
                tuple(entries[i * n + j] for j in range(n)) for i in range(n)
            )
            try:
                pool.append(group_point(tower, rows))
            except ValueError:
                continue
    else:
        pool = [_random_group_point(tower, n, rng) for _ in range(300)]
    for x in pool:
        m = stratum_index(x)
        for v in itertools.product(lv.elements(), repeat=n - 1):
            ux = group_point(tower, mat_mul(lv, u_q_matrix(tower, n, v), x.rows))
            if stratum_index(ux) != m:
                ok = False
    checks.append(
        CheckResult(
            "left-translation-stability", ok, detail=f"{len(pool)} points"
        )
    )
    # normalization round trip, coset formulas, rank and linearity
    ok_round = ok_coset = ok_rank = ok_linear = True
    for idx in range(samples):
        x = _random_group_point(tower, n, rng)
        h, y, m = normalize_stratum(x)
        sd = bernstein_coords(y, m)
        if sd.reassemble(tower) != y.rows:
            ok_round = False
        deltas = {}
        for v in itertools.product(lv.elements(), repeat=n - 1):
            b, info = coset_charpoly(y, v, m)
            if not (
                info["factorization_ok"]
                and info["closed_formula_ok"]
                and info["bm_fixed"]
            ):
                ok_coset = False
            deltas[v] = tuple(
                lv.sub(c, base) for c, base in zip(info["c_ux"], y.char)
            )
        if coset_rank(y) != m - 1 or coset_rank(x) != m - 1:
            ok_rank = False
        if idx < 10:
            vs = list(deltas)
            for _ in range(3):
                v1, v2 = rng.choice(vs), rng.choice(vs)
                vsum = tuple(lv.add(a, b) for a, b in zip(v1, v2))
                if deltas[vsum] != tuple(
                    lv.add(a, b) for a, b in zip(deltas[v1], deltas[v2])
                ):
                    ok_linear = False
    checks.append(CheckResult("normalization-roundtrip", ok_round))
    checks.append(
        CheckResult("coset-charpoly-formula", ok_coset, detail=f"{samples} points")
    )
    checks.append(CheckResult("coset-map-rank", ok_rank))
    checks.append(CheckResult("coset-map-linearity", ok_linear))
    # simple transitivity brute force on the (companion, scalar) layout
    ok = True
    ran = False
    if n == 3 and q <= 3:
        ran = True
        for a1 in lv.elements():
            for a2 in lv.units():
                xf2 = companion_matrix(lv, (a1, a2), 2)
                for xe in lv.units():
                    seen = set()
                    for v1 in lv.elements():
                        for vm in lv.elements():
                            y = lemma_translation_map(
                                lv, xf2, ((xe,),), (v1,), ((vm,), (0,))
                            )
                            seen.add(y)
                    if len(seen) != q * q:
                        ok = False
    checks.append(
        CheckResult(
            "translation-map-bijective",
            ok,
            detail="" if ran else "layout needs shape [3] at q <= 3",
        )
    )
    # census vs recursion
    ok = True
    tested = 0
    if (n <= 3 and q <= 3) or (n == 2 and q <= 7):
        for lead in itertools.product(lv.elements(), repeat=n - 1):
            for const in lv.units():
                a = tuple(lead) + (const,)
                cen = orbit_census(tower, n, a)
                pred = census_prediction(tower, n, a)
                if cen["count"] != pred["count"] or {
                    k: len(v) for k, v in cen["by_stratum"].items()
                } != pred["by_stratum"]:
                    ok = False
                tested += 1
    checks.append(
        CheckResult("orbit-census-recursion", ok, detail=f"{tested} charpolys")
    )
    # parabolic rank classification round trip
    ok = True
    for _ in range(40):
        x = _random_group_point(tower, n, rng)
        for n1 in range(1, n):
            split = (n1, n - n1)
            r, _, rep = parabolic_rank_classify(x, split)
            r2, _, rep2 = parabolic_rank_classify(rep, split)
            if r2 != r or rep2.rows != rep.rows:
                ok = False
    checks.append(CheckResult("parabolic-rank-classify-idempotent", ok))
    return checks


# -- suite: induction --------------------------------------------------------------


def iter_invertible(tower, n):
    lv = tower.level(1)
    for entries in itertools.product(lv.elements(), repeat=n * n):
        rows = tuple(tuple(entries[i * n + j] for j in range(n)) for i in range(n))
        try:
            yield group_point(tower, rows)
        except ValueError:
            continue


def suite_induction(cfg) -> list:
    checks = []
    tower, ws = _context(cfg)
    if len(cfg["shape"]) != 1:
        raise ConfigInvalid("induction suite needs a single-factor shape")
    n = cfg["shape"][0]
    q = tower.q
    lv = tower.level(1)
    traces = TorusTraces(tower, ws)
    gamma = GammaTrace(traces)
    rng = random.Random(cfg["seed"])
    if n == 2:
        pool = list(iter_invertible(tower, 2))
    else:
        pool = [_random_group_point(tower, n, rng) for _ in range(200)]
    # flag sum vs eigenvalue-ordering sum on regular semisimple points
    ok = True
    count = 0
    sign = (-1) ** (n * n - n)
    for x in pool:
        if not _squarefree(tower, x.char):
            continue
        count += 1
        flag_route = induced_trace(traces, x)
        fiber_route = tower.ring.zero
        for pt in steinberg_fiber(tower, x.char, perm_identity(n)):
            fiber_route = fiber_route + traces.hyper_trace(
                expand_twisted_point(tower, pt, 1)
            )
        if flag_route != fiber_route * sign:
            ok = False
    checks.append(
        CheckResult(
            "flag-vs-ordering-consistency", ok, detail=f"{count} rss points"
        )
    )
    # conjugation invariance of the gamma trace
    ok = True
    for _ in range(50):
        x = _random_group_point(tower, n, rng)
        if not is_regular(x):
            continue
        g = _random_group_point(tower, n, rng)
        conj = group_point(
            tower, mat_mul(lv, g.rows, mat_mul(lv, x.rows, mat_inv(lv, g.rows)))
        )
        if gamma.phi_regular(conj) != gamma.phi_regular(x):
            ok = False
    checks.append(CheckResult("conjugation-invariance", ok))
    # standard weights: gamma trace is a frozen unit times psi(trace)
    if cfg["rep"] == "std":
        ok = True
        unit = tower.ring.from_int((-1) ** n)
        seen = 0
        for x in pool:
            if not is_regular(x):
                continue
            seen += 1
            tr_x = 0
            for i in range(n):
                tr_x = lv.add(tr_x, x.rows[i][i])
            if gamma.phi_regular(x) != unit * tower.psi(tr_x):
                ok = False
        checks.append(
            CheckResult(
                "gamma-trace-kernel-shape",
                ok,
                value=unit,
                detail=f"unit (-1)^n over {seen} regular points",
            )
        )
    # the trace refuses to evaluate off the regular locus
    scalar = 2 % q if q > 2 else 1
    central = group_point(
        tower,
        tuple(tuple(scalar if i == j else 0 for j in range(n)) for i in range(n)),
    )
    try:
        gamma.phi_regular(central)
        ok = False
    except NotComputableLocus:
        ok = True
    checks.append(CheckResult("off-locus-refusal", ok))
    # restriction to the diagonal Levi: a frozen unit times the torus trace
    if n == 2 and q > 2:
        ok = True
        unit = q
        for a in lv.units():
            for b in lv.units():
                if a == b:
                    continue
                if levi_restriction_sum(gamma, (a, b)) != traces.hyper_trace(
                    (a, b)
                ) * unit:
                    ok = False
        checks.append(
            CheckResult(
                "levi-restriction-unit",
                ok,
                value=unit,
                detail="frozen unit q, exact on all distinct-eigenvalue points",
            )
        )
    return checks


# -- suite: gl2-main ----------------------------------------------------------------


def in_borel(rows):
    return rows[1][0] == 0


def vanishing_sweep_gl2(cfg) -> list:
    """The main GL(2) coset sweep, both routes, plus the mutation control."""
    checks = []
    tower, ws = _context(cfg)
    if tower.q > 7:
        raise ConfigInvalid("gl2-main runs at q <= 7")
    lv = tower.level(1)
    traces = TorusTraces(tower, ws)
    gamma = GammaTrace(traces)
    oracle = oracle_phi(traces, gamma)
    bad = []
    route_mismatch = []
    swept = 0
    for g in iter_invertible(tower, 2):
        if in_borel(g.rows):
            continue
        swept += 1
        geo = tower.ring.zero
        orc = tower.ring.zero
        for v0 in lv.elements():
            u = ((1, v0), (0, 1))
            ug_rows = mat_mul(lv, u, g.rows)
            key = class_of(tower, ug_rows)
            geo_val = gamma.value_for_charpoly((key[0], key[1]))
            orc_val = oracle.values[key]
            if geo_val != orc_val:
                route_mismatch.append((g.rows, v0))
            geo = geo + geo_val
            orc = orc + orc_val
        if not geo.is_zero() or not orc.is_zero():
            bad.append(g.rows)
    checks.append(
        CheckResult(
            "coset-vanishing-both-routes",
            not bad and not route_mismatch,
            detail=f"{swept} cosets swept; failures={len(bad)}, "
            f"route mismatches={len(route_mismatch)}",
        )
    )
    # mutation control: the untwisted descent must break at least one coset
    gamma_mut = GammaTrace(traces, weyl_sign=False)
    broken = 0
    for g in iter_invertible(tower, 2):
        if in_borel(g.rows):
            continue
        s = tower.ring.zero
        for v0 in lv.elements():
            u = ((1, v0), (0, 1))
            ug = group_point(tower, mat_mul(lv, u, g.rows))
            s = s + gamma_mut.value_for_charpoly(ug.char)
        if not s.is_zero():
            broken += 1
    checks.append(
        CheckResult(
            "mutation-control-breaks",
            broken > 0,
            detail=f"{broken} of {swept} cosets break under the untwisted descent",
        )
    )
    checks.append(
        CheckResult(
            "oracle-solve",
            True,
            value=oracle.convention,
            detail=f"rank {oracle.rank}/{oracle.unknown_count}",
        )
    )
    if bad or route_mismatch:
        exc = VanishingFailed(
            f"vanishing failed on {len(bad)} cosets, first {bad[:2]}; "
            f"{len(route_mismatch)} route mismatches, first {route_mismatch[:2]}"
        )
        exc.checks = checks
        raise exc
    return checks


# -- suite: gl3-top -----------------------------------------------------------------


def vanishing_sweep_gl3_top(cfg) -> list:
    checks = []
    tower, ws = _context(cfg)
    q = tower.q
    if q > 3:
        raise ConfigInvalid("gl3-top runs at q <= 3")
    lv = tower.level(1)
    traces = TorusTraces(tower, ws)
    gamma = GammaTrace(traces)
    rng = random.Random(cfg["seed"])
    bad = []
    tested = 0
    for lead in itertools.product(lv.elements(), repeat=2):
        for const in lv.units():
            a = tuple(lead) + (const,)
            x = group_point(tower, companion_matrix(lv, a, 3))
            coset, det_fiber = gamma.coset_vanishing_top(x)
            tested += 1
            if not coset.is_zero() or coset != det_fiber:
                bad.append(("companion", a))
    extras = 0
    while extras < 100:
        x = _random_group_point(tower, 3, rng)
        if stratum_index(x) != 3:
            continue
        coset, det_fiber = gamma.coset_vanishing_top(x)
        tested += 1
        extras += 1
        if not coset.is_zero() or coset != det_fiber:
            bad.append(("random", x.rows))
    checks.append(
        CheckResult(
            "top-stratum-coset-vanishing",
            not bad,
            detail=f"{tested} points tested ({extras} random), both routes",
        )
    )
    ok = True
    for z in lv.units():
        if not traces.sigma_fiber_sum(0, z).is_zero():
            ok = False
    checks.append(CheckResult("sigma-fiber-gl3-torus", ok))
    if bad:
        exc = VanishingFailed(f"gl3 coset vanishing failed at {bad[:3]}")
        exc.checks = checks
        raise exc
    return checks


# -- suite: oracle ------------------------------------------------------------------


def suite_oracle(cfg) -> list:
    checks = []
    tower, ws = _context(cfg)
    traces = TorusTraces(tower, ws)
    gamma = GammaTrace(traces)
    table = build_gl2_table(tower)
    checks.append(
        CheckResult(
            "character-table-orthogonality",
            True,
            detail=f"{len(table.classes)} classes, group order "
            f"{gl2_order(tower.q)}",
        )
    )
    result = oracle_phi(traces, gamma)
    ok = True
    for cls in gl2_classes(tower):
        if cls.kind == "central":
            continue
        if result.values[cls.key] != gamma.value_for_charpoly(
            (cls.key[0], cls.key[1])
        ):
            ok = False
    checks.append(
        CheckResult(
            "oracle-matches-geometry",
            ok,
            detail=f"convention={result.convention}, rank {result.rank}"
            f"/{result.unknown_count}",
        )
    )
    checks.append(
        CheckResult(
            "oracle-full-rank",
            not result.rank_deficient,
            detail="rank deficiency is reported, never masked",
        )
    )
    u_p, u_c, rank, n_unknowns = calibrate_generic_units(traces, gamma)
    full = rank == n_unknowns
    expect_p = tower.ring.from_int(tower.q)
    expect_c = tower.ring.from_int(-tower.q)
    ok = (u_c == expect_c if full else True) and (
        u_p == expect_p if (full and u_p is not None) else True
    )
    checks.append(
        CheckResult(
            "generic-gamma-calibration",
            ok,
            value=[u_p, u_c],
            detail=f"rank {rank}/{n_unknowns}"
            + ("" if full else " (scales not pinned at this rank)"),
        )
    )
    return checks


# -- driver -------------------------------------------------------------------------


SUITE_FUNCTIONS = {
    "arith": suite_arith,
    "torus": suite_torus,
    "mirabolic": suite_mirabolic,
    "induction": suite_induction,
    "gl2-main": vanishing_sweep_gl2,
    "gl3-top": vanishing_sweep_gl3_top,
    "oracle": suite_oracle,
}


def run_suite(cfg_raw, suites=None, include_timings=False):
    """Run the configured suites; returns a list of SuiteReport."""
    cfg = validate_config(cfg_raw)
    names = suites if suites else cfg["suites"]
    for s in names:
        if s not in SUITE_NAMES:
            raise ConfigInvalid(f"unknown suite {s!r}")
    reports = []
    for name in names:
        params = {
            "p": cfg["p"],
            "f": cfg["f"],
            "shape": cfg["shape"],
            "rep": cfg["rep"],
            "caps": cfg["caps"],
        }
        report = SuiteReport(suite=name, params=params, seed=cfg["seed"])
        started = time.perf_counter()
        try:
            report.checks = SUITE_FUNCTIONS[name](cfg)
        except ConfigInvalid:
            raise
        except GammasumsError as exc:
            report.checks = list(getattr(exc, "checks", []))
            report.checks.append(
                CheckResult(
                    "suite-error", False, detail=f"{type(exc).__name__}: {exc}"
                )
            )
        if include_timings:
            report.params = dict(report.params)
            report.params["elapsed_s"] = round(time.perf_counter() - started, 3)
        reports.append(report)
    return reports
