"""Dense matrix and polynomial helpers over one tower level.

Matrices are tuples of row tuples of encoded field elements.  Characteristic
polynomials are returned as the coefficient vector (a_1, ..., a_n) of
t^n + a_1 t^(n-1) + ... + a_n, matching the companion-matrix convention used
throughout the mirabolic module.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(level, a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = 0
            for t in range(k):
                if ai[t] and b[t][j]:
                    acc = level.add(acc, level.mul(ai[t], b[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(level, a, v):
    out = []
    for row in a:
        acc = 0
        for c, x in zip(row, v):
            if c and x:
                acc = level.add(acc, level.mul(c, x))
        out.append(acc)
    return tuple(out)


def mat_add(level, a, b):
    return tuple(
        tuple(level.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_scale(level, c, a):
    return tuple(tuple(level.mul(c, x) for x in row) for row in a)


def mat_inv(level, a):
    """Gauss-Jordan inverse; raises ValueError on singular input."""
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if aug[i][col]:
                pivot = i
                break
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = level.inv(aug[col][col])
        aug[col] = [level.mul(inv, v) for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [
                    level.sub(v, level.mul(f, w)) for v, w in zip(aug[i], aug[col])
                ]
    return tuple(tuple(row[n:]) for row in aug)


def mat_rank(level, a):
    if not a:
        return 0
    rows = [list(r) for r in a]
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = level.inv(rows[rank][col])
        rows[rank] = [level.mul(inv, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [
                    level.sub(v, level.mul(f, w)) for v, w in zip(rows[i], rows[rank])
                ]
        rank += 1
    return rank


@lru_cache(maxsize=None)
def _perm_data(n):
    data = []
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j, ell = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                ell += 1
            if ell % 2 == 0:
                sign = -sign
        mask = 0
        moved = []
        for i in range(n):
            if perm[i] == i:
                mask |= 1 << i
            else:
                moved.append((i, perm[i]))
        data.append((sign, mask, tuple(moved)))
    return data


def charpoly(level, a):
    """(a_1, ..., a_n) with det(tI - a) = t^n + a_1 t^(n-1) + ... + a_n.

    Expansion over permutations, grouping fixed points into products of
    (t - a_ii) which are shared through a subset table.
    """
    n = len(a)
    if n == 0:
        return ()
    # diag_poly[mask] = prod over bits i of (t - a[i][i]), low degree first
    diag_poly = [None] * (1 << n)
    diag_poly[0] = (1,)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        prev = diag_poly[mask ^ (1 << low)]
        di = a[low][low]
        # multiply prev by (t - a_ii)
        out = [0] * (len(prev) + 1)
        for k, c in enumerate(prev):
            if c:
                out[k + 1] = level.add(out[k + 1], c)
                out[k] = level.sub(out[k], level.mul(c, di))
        diag_poly[mask] = tuple(out)
    total = [0] * (n + 1)
    for sign, mask, moved in _perm_data(n):
        coeff = 1
        for i, j in moved:
            entry = a[i][j]
            if not entry:
                coeff = 0
                break
            coeff = level.mul(coeff, level.neg(entry))
        if not coeff:
            continue
        if sign < 0:
            coeff = level.neg(coeff)
        for k, c in enumerate(diag_poly[mask]):
            if c:
                total[k] = level.add(total[k], level.mul(coeff, c))
    # total is low degree first and monic; return (a_1, ..., a_n)
    return tuple(total[n - 1 - i] for i in range(n))


def char_coeffs_to_poly(coeffs):
    """Monic polynomial, low degree first, from an (a_1, ..., a_n) vector."""
    n = len(coeffs)
    return tuple(coeffs[n - 1 - k] for k in range(n)) + (1,)


def poly_to_char_coeffs(poly):
    n = len(poly) - 1
    return tuple(poly[n - 1 - i] for i in range(n))


def det(level, a):
    n = len(a)
    cp = charpoly(level, a)
    d = cp[-1] if cp else 1
    return level.neg(d) if n % 2 else d


# -- polynomials over a level (low degree first), for factorization ----------


def pol_mul(level, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = level.add(out[i + j], level.mul(x, y))
    return tuple(out)


def pol_divmod(level, a, b):
    a = list(a)
    db = len(b) - 1
    while db >= 0 and b[db] == 0:
        db -= 1
    if db < 0:
        raise ZeroDivisionError("division by the zero polynomial")
    inv_lead = level.inv(b[db])
    if len(a) - 1 < db:
        return (0,), tuple(a)
    q = [0] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        c = level.mul(a[k + db], inv_lead)
        q[k] = c
        if c:
            for i in range(db + 1):
                a[k + i] = level.sub(a[k + i], level.mul(c, b[i]))
    rem = a[:db] if db else [0]
    return tuple(q), tuple(rem if any(rem) else [0])


def pol_eval(level, poly, x):
    acc = 0
    for c in reversed(poly):
        acc = level.add(level.mul(acc, x), c)
    return acc


def pol_eval_embedded(tower, poly, level_from, x, level_to):
    """Evaluate a level_from polynomial at a level_to point."""
    lv = tower.level(level_to)
    acc = 0
    for c in reversed(poly):
        acc = lv.add(lv.mul(acc, x), tower.embed(c, level_from, level_to))
    return acc
