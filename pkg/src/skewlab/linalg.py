"""Exact linear algebra: numpy mod-p for prime-field systems, table lookups
for systems over an extension level, and a vectorized batch rank used by the
codeword enumerators."""

from __future__ import annotations

import numpy as np

from .errors import SkewlabError

# ---------------------------------------------------------------------------
# F_p (prime) systems: numpy int64 matrices taken mod p
# ---------------------------------------------------------------------------

def fp_rref(A, p):
    """Reduced row echelon form over F_p; returns (R, pivot_columns)."""
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if A[i, c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        nz = np.flatnonzero(A[:, c])
        for i in nz:
            if i != r:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def fp_rank(A, p):
    return len(fp_rref(A, p)[1])


def fp_nullspace(A, p):
    """Basis of the right nullspace, one vector per free column, RREF order."""
    R, pivots = fp_rref(A, p)
    n = R.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(n, dtype=np.int64)
        v[fc] = 1
        for ri, c in enumerate(pivots):
            v[c] = (-R[ri, fc]) % p
        basis.append(v)
    return basis


def fp_solve(A, b, p):
    """One solution of A x = b over F_p, or None if inconsistent."""
    A = np.array(A, dtype=np.int64) % p
    b = np.array(b, dtype=np.int64) % p
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, pivots = fp_rref(aug, p)
    n = A.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for ri, c in enumerate(pivots):
        x[c] = R[ri, n]
    return x


def fp_inv(A, p):
    A = np.array(A, dtype=np.int64) % p
    m = A.shape[0]
    aug = np.concatenate([A, np.eye(m, dtype=np.int64)], axis=1)
    R, pivots = fp_rref(aug, p)
    if pivots != list(range(m)):
        raise SkewlabError("matrix is singular over F_p")
    return R[:, m:]


def fp_row_span_key(rows, p):
    """Canonical key identifying the F_p row span (RREF, zero rows dropped)."""
    if len(rows) == 0:
        return ()
    R, pivots = fp_rref(np.array(rows, dtype=np.int64), p)
    return tuple(tuple(int(x) for x in R[i]) for i in range(len(pivots)))


def fp_in_span(rref_pair, v, p):
    """Membership of v in a span given (RREF, pivots) from fp_rref."""
    R, pivots = rref_pair
    v = np.array(v, dtype=np.int64) % p
    for ri, c in enumerate(pivots):
        if v[c]:
            v = (v - v[c] * R[ri]) % p
    return not v.any()


# ---------------------------------------------------------------------------
# systems over a table-backed level (entries are element codes)
# ---------------------------------------------------------------------------

def lv_rref(rows, level):
    """RREF over an extension level; rows is a list of lists of codes."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if A[i][c]:
                pr = i
                break
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = level.inv(A[r][c])
        A[r] = [level.mul(inv, x) for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [level.sub(x, level.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def lv_rank(rows, level):
    return len(lv_rref(rows, level)[1])


def lv_nullspace(rows, level):
    R, pivots = lv_rref(rows, level)
    n = len(R[0]) if R else 0
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for ri, c in enumerate(pivots):
            v[c] = level.neg(R[ri][fc])
        basis.append(v)
    return basis


def lv_inv(rows, level):
    m = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(m)] for i, r in enumerate(rows)]
    R, pivots = lv_rref(aug, level)
    if pivots != list(range(m)):
        raise SkewlabError("matrix is singular")
    return [r[m:] for r in R]


# ---------------------------------------------------------------------------
# batch rank of many small matrices over one level (vectorized via tables)
# ---------------------------------------------------------------------------

def batch_rank(mats, level):
    """Ranks of a (N, r, c) array of level codes, exact Gaussian elimination.

    Vectorized across N with numpy fancy indexing into the level tables;
    the per-matrix loop is only over the (tiny) column count.
    """
    A = np.array(mats, dtype=np.int16, copy=True)
    if A.ndim != 3:
        raise SkewlabError("batch_rank expects a 3-d array")
    N, nr, nc = A.shape
    add_t, mul_t = level.add_t, level.mul_t
    neg_t, inv_t = level.neg_t, level.inv_t
    row = np.zeros(N, dtype=np.int64)
    rows_idx = np.arange(nr)
    for col in range(nc):
        colvals = A[:, :, col]
        cand = (colvals != 0) & (rows_idx[None, :] >= row[:, None])
        has = cand.any(axis=1)
        sel = np.flatnonzero(has)
        if sel.size == 0:
            continue
        piv = cand[sel].argmax(axis=1)
        cur = row[sel]
        # swap pivot row up
        tmp = A[sel, cur, :].copy()
        A[sel, cur, :] = A[sel, piv, :]
        A[sel, piv, :] = tmp
        # normalize pivot row
        pv = inv_t[A[sel, cur, col]]
        A[sel, cur, :] = mul_t[A[sel, cur, :], pv[:, None]]
        # eliminate strictly below the pivot row
        for r2 in range(1, nr):
            mask = sel[cur + r2 < nr]
            if mask.size == 0:
                continue
            tgt = row[mask] + r2
            f = A[mask, tgt, col]
            nzm = mask[f != 0]
            if nzm.size == 0:
                continue
            tgt = row[nzm] + r2
            f = A[nzm, tgt, col]
            upd = mul_t[neg_t[f][:, None], A[nzm, row[nzm], :]]
            A[nzm, tgt, :] = add_t[A[nzm, tgt, :], upd]
        row[sel] += 1
        if int(row.max()) == nr:
            break
    return row
