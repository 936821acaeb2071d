"""Independent oracles used to cross-check the library.

Everything here recomputes results by definition-level brute force (exhaustive
enumeration, evaluation kernels, direct matrix-side linear systems), never
through the code paths it is checking.
"""

import itertools

import numpy as np

from skewlab.gf import FieldElement
from skewlab.linalg import fp_nullspace, fp_rank
from skewlab.matrep import matrix_pairing_fp
from skewlab.skew import SkewPoly, right_divide


def evaluation_rank(elem):
    """Rank of an element of R_{y-1} (s = 1) via its action y -> sum a_i sigma^i(y).

    Independent of the module representation: F_{q^n}[x;sigma]/(x^n - 1) acts on
    F_{q^n} by twisted evaluation, and the rank is n minus the F_q-dimension of
    the kernel of that map.
    """
    ring = elem.ring
    tw = ring.tower
    assert ring.F.degree == 1
    lam = tw.embed_idx("mid", "big", tw.level("mid").neg(ring.F.coeffs[0]))
    assert lam == 1, "evaluation oracle needs F = y - 1"
    big = tw.level("big")
    n, e = tw.n, tw.e
    rows = []
    for u in range(big.deg):
        y = tw.p ** u
        acc = 0
        for i, c in enumerate(elem.coeffs):
            if c:
                acc = big.add(acc, big.mul(c, tw.sigma_idx(y, i)))
        rows.append(big.dec(acc))
    # F_q-rank = F_p-rank of the e-blocked matrix divided by e once the map is
    # F_q-linear; the map commutes with F_q scalars, so compute over F_p and
    # divide (exact by linearity).
    fp = fp_rank(np.array(rows, dtype=np.int64).T, tw.p)
    assert fp % e == 0
    return fp // e


def brute_gcrd(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Maximal-degree monic common right divisor by exhaustive scan."""
    tw = f.tower
    big = tw.level("big")
    best = SkewPoly.one(tw)
    max_deg = min(d for d in (f.degree, g.degree) if d is not None)
    for deg in range(1, max_deg + 1):
        for flat in itertools.product(range(big.size), repeat=deg):
            cand = SkewPoly(tw, list(flat) + [1])
            if right_divide(f, cand)[1].is_zero() and right_divide(g, cand)[1].is_zero():
                if best.degree is None or deg > best.degree:
                    best = cand
    return best


def naive_min_distance(code, ctx):
    """Pure-python enumeration over itertools.product, one rank at a time."""
    p = code.ring.tower.p
    best = None
    for digits in itertools.product(range(p), repeat=code.dim_p):
        if not any(digits):
            continue
        r = ctx.rank(code.codeword(digits))
        if best is None or r < best:
            best = r
    return best


def matrix_side_dual_span(code, ctx):
    """The Delsarte dual computed entirely matrix-side.

    Solves Tr_{q^s/p}(Tr(X Y^T)) = 0 for Y over the F_p coordinates of
    M_n(F_{q^s}), returning the dual as a set of matrices (row-span key).
    """
    ring = code.ring
    tw = ring.tower
    n = tw.n
    ef = tw.level("ef")
    dim = n * n * ef.deg
    from skewlab.matrep import MatrixEF

    basis_mats = []
    for t in range(dim):
        vec = np.zeros(dim, dtype=np.int64)
        vec[t] = 1
        basis_mats.append(MatrixEF.from_fp_vector(tw, n, vec))
    rows = []
    for g in code.gens:
        X = ctx.matrix(g)
        rows.append([matrix_pairing_fp(tw, X, B.transpose()) for B in basis_mats])
    null = fp_nullspace(np.array(rows, dtype=np.int64), tw.p)
    return [MatrixEF.from_fp_vector(tw, n, v) for v in null]


def matrix_span_key(tower, mats):
    from skewlab.linalg import fp_row_span_key

    vecs = [m.to_fp_vector() for m in mats]
    return fp_row_span_key(np.array(vecs, dtype=np.int64), tower.p)
