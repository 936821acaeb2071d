"""Concrete algebra isomorphisms R_F -> M_n(F_{q^s}).

The isomorphism is realized on the simple left module V = R/Rg for a monic
degree-s right divisor g of F(x^n): V is an n-dimensional vector space over
the center (identified with F_{q^s} by sending the class of x^n to a fixed
root of F), and every element of R_F acts by left multiplication.

The module also solves the two Skolem-Noether style intertwining problems
(change of representation, and compatibility of transposition with the
adjoint map) and finds the unit transporting the matrix trace form to the
skew-side bilinear form.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import (
    NoDivisorFound,
    NoInvertibleSolution,
    NotInvertible,
    NoUnitSolution,
    RingMismatch,
    ScaleTooLarge,
    SkewlabError,
)
from .gf import FieldElement
from .linalg import batch_rank, fp_inv, fp_rank, lv_inv, lv_nullspace
from .quot import QuotElement, QuotRing, adjoint_element
from .skew import SkewPoly, right_divide

_SEARCH_LIMIT = 2 ** 20


# ---------------------------------------------------------------------------
# matrices over the ef level
# ---------------------------------------------------------------------------

class MatrixEF:
    """Immutable n x n matrix with entries on the ef level (integer codes)."""

    __slots__ = ("tower", "arr")

    def __init__(self, tower, arr):
        arr = np.array(arr, dtype=np.int16, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise SkewlabError("MatrixEF must be square")
        arr.flags.writeable = False
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "arr", arr)

    def __setattr__(self, *a):
        raise AttributeError("MatrixEF is immutable")

    @classmethod
    def identity(cls, tower, n):
        return cls(tower, np.eye(n, dtype=np.int16))

    @classmethod
    def zero(cls, tower, n):
        return cls(tower, np.zeros((n, n), dtype=np.int16))

    @property
    def n(self):
        return self.arr.shape[0]

    def _lv(self):
        return self.tower.level("ef")

    def entry(self, i, j) -> FieldElement:
        return FieldElement(self.tower, "ef", int(self.arr[i, j]))

    def __add__(self, other):
        L = self._lv()
        return MatrixEF(self.tower, L.add_t[self.arr, other.arr])

    def __sub__(self, other):
        L = self._lv()
        return MatrixEF(self.tower, L.add_t[self.arr, L.neg_t[other.arr]])

    def __neg__(self):
        return MatrixEF(self.tower, self._lv().neg_t[self.arr])

    def __matmul__(self, other):
        L = self._lv()
        n = self.n
        out = np.zeros((n, n), dtype=np.int16)
        for k in range(n):
            term = L.mul_t[self.arr[:, k][:, None], other.arr[k, :][None, :]]
            out = L.add_t[out, term]
        return MatrixEF(self.tower, out)

    def scale(self, c):
        idx = c.idx if isinstance(c, FieldElement) else int(c)
        return MatrixEF(self.tower, self._lv().mul_t[self.arr, idx])

    def transpose(self):
        return MatrixEF(self.tower, self.arr.T)

    def rank(self):
        return int(batch_rank(self.arr[None, :, :], self._lv())[0])

    def inverse(self):
        try:
            rows = lv_inv([list(map(int, r)) for r in self.arr], self._lv())
        except SkewlabError:
            raise NotInvertible("matrix is singular") from None
        return MatrixEF(self.tower, rows)

    def trace_idx(self):
        L = self._lv()
        acc = 0
        for i in range(self.n):
            acc = L.add(acc, int(self.arr[i, i]))
        return acc

    def entrywise_frob_p(self, h):
        """Apply the automorphism y -> y^(p^h) to every entry."""
        L = self._lv()
        out = self.arr
        for _ in range(h % L.deg):
            out = L.frob_t[out]
        return MatrixEF(self.tower, out)

    def to_fp_vector(self):
        L = self._lv()
        n = self.n
        out = np.zeros(n * n * L.deg, dtype=np.int64)
        flat = self.arr.reshape(-1)
        for t, code in enumerate(flat):
            out[t * L.deg:(t + 1) * L.deg] = L.dec(int(code))
        return out

    @classmethod
    def from_fp_vector(cls, tower, n, vec):
        L = tower.level("ef")
        flat = [
            L.enc([int(v) % tower.p for v in vec[t * L.deg:(t + 1) * L.deg]])
            for t in range(n * n)
        ]
        return cls(tower, np.array(flat, dtype=np.int16).reshape(n, n))

    def __eq__(self, other):
        return isinstance(other, MatrixEF) and np.array_equal(self.arr, other.arr)

    def __hash__(self):
        return hash(self.arr.tobytes())

    def to_text(self):
        return "|".join(
            ";".join(self.entry(i, j).to_text().split(":", 1)[1] for j in range(self.n))
            for i in range(self.n)
        )

    def __repr__(self):
        return f"MatrixEF({self.n}x{self.n})"


# ---------------------------------------------------------------------------
# the representation context
# ---------------------------------------------------------------------------

class RepContext:
    """A concrete isomorphism M : R_F -> M_n(F_{q^s}) on V = R/Rg.

    `root_override` replaces the default (lexicographically least) root of F
    used to identify the center with F_{q^s}; any Galois conjugate gives
    another valid isomorphism, and the transpose bridge needs the one whose
    root is inverse to its partner's.
    """

    def __init__(self, ring: QuotRing, g: SkewPoly, root_override=None):
        self.ring = ring
        self.g = g
        tw = ring.tower
        self.n = tw.n
        s = ring.F.degree
        rem = right_divide(ring.fxn, g)[1]
        if g.degree != s or not g.is_monic() or not rem.is_zero():
            raise SkewlabError("g must be a monic degree-s right divisor of F(x^n)")
        self.root = self._center_root(root_override)
        self._extract_basis()
        self._build_coordinate_solver()
        self._fp_matrix = None
        self._fp_matrix_inv = None
        self._cache = {}

    # -- internals ---------------------------------------------------------------
    def _center_root(self, root_override):
        """Root of F in F_{q^s} taken as the image of the x^n class."""
        tw = self.ring.tower
        ef = tw.level("ef")
        coeffs = [tw.embed_idx("mid", "ef", c) for c in self.ring.F.coeffs]
        roots = []
        for u in range(ef.size):
            acc = 0
            for c in reversed(coeffs):
                acc = ef.add(ef.mul(acc, u), c)
            if acc == 0:
                roots.append(u)
        if not roots:
            raise SkewlabError("center polynomial has no root in F_{q^s}")
        if root_override is not None:
            idx = root_override.idx if isinstance(root_override, FieldElement) else int(root_override)
            if idx not in roots:
                raise SkewlabError("root_override is not a root of F in F_{q^s}")
            return idx
        roots.sort(key=ef.tuple_key)
        return roots[0]

    def _module_reduce(self, poly: SkewPoly) -> SkewPoly:
        return right_divide(poly, self.g)[1]

    def _module_coords(self, poly: SkewPoly):
        """F_p coordinate vector of a module element (degree < s)."""
        tw = self.ring.tower
        big = tw.level("big")
        s = self.ring.F.degree
        ne = big.deg
        out = np.zeros(s * ne, dtype=np.int64)
        for i, c in enumerate(poly.coeffs):
            out[i * ne:(i + 1) * ne] = big.dec(c)
        return out

    def _extract_basis(self):
        """Greedy scan for n module elements independent over the center."""
        tw = self.ring.tower
        big = tw.level("big")
        s = self.ring.F.degree
        ne, e = big.deg, tw.e
        nse = s * ne
        xn = SkewPoly.x(tw, tw.n)
        mid_units = [tw.embed_idx("mid", "big", tw.p ** c) for c in range(e)]

        def center_orbit(v):
            """Module elements t^c x^(n d) * v for d < s, c < e."""
            out = []
            cur = v
            for _ in range(s):
                for u in mid_units:
                    out.append(cur.const_left_mul(u))
                cur = self._module_reduce(xn * cur)
            return out

        rows = np.zeros((0, nse), dtype=np.int64)
        basis = []
        orbit_vecs = []
        for m in range(s):
            for u in range(ne):
                cand = SkewPoly.monomial(tw, tw.p ** u, m)
                vec = self._module_coords(cand)
                stacked = np.vstack([rows, vec[None, :]])
                if fp_rank(stacked, tw.p) == rows.shape[0]:
                    continue
                orbit = [self._module_coords(w) for w in center_orbit(cand)]
                new_rows = np.vstack([rows] + [o[None, :] for o in orbit])
                if fp_rank(new_rows, tw.p) != rows.shape[0] + s * e:
                    raise SkewlabError("center orbit of a fresh vector is degenerate")
                basis.append(cand)
                orbit_vecs.extend(orbit)
                rows = new_rows
                if len(basis) == self.n:
                    break
            if len(basis) == self.n:
                break
        if len(basis) != self.n:
            raise SkewlabError("failed to extract a module basis")  # unreachable
        self.basis = tuple(basis)
        self._orbit_matrix = np.array(orbit_vecs, dtype=np.int64).T  # coords x (i,d,c)

    def _build_coordinate_solver(self):
        tw = self.ring.tower
        ef = tw.level("ef")
        s, e = self.ring.F.degree, tw.e
        self._solve_mat = fp_inv(self._orbit_matrix, tw.p)
        # ef scalars corresponding to the (d, c) slots of each basis vector
        scal = np.zeros(s * e, dtype=np.int16)
        for d in range(s):
            rd = ef.pow(self.root, d)
            for c in range(e):
                scal[d * e + c] = ef.mul(tw.embed_idx("mid", "ef", tw.p ** c), rd)
        self._slot_scalars = scal

    def _coords_ef(self, poly: SkewPoly):
        """F_{q^s}-coordinates of a module element in the extracted basis."""
        tw = self.ring.tower
        ef = tw.level("ef")
        s, e = self.ring.F.degree, tw.e
        lam = (self._solve_mat @ self._module_coords(poly)) % tw.p
        out = np.zeros(self.n, dtype=np.int16)
        for i in range(self.n):
            acc = 0
            for t in range(s * e):
                l = int(lam[i * s * e + t])
                if l:
                    acc = ef.add(acc, ef.mul(l % tw.p, int(self._slot_scalars[t])))
            out[i] = acc
        return out

    # -- public surface -------------------------------------------------------------
    def matrix(self, a) -> MatrixEF:
        """M(a): columns are the coordinates of a acting on the basis."""
        a = self.ring.element(a)
        cached = self._cache.get(a.coeffs)
        if cached is not None:
            return cached
        cols = [self._coords_ef(self._module_reduce(a.rep * v)) for v in self.basis]
        m = MatrixEF(self.ring.tower, np.array(cols, dtype=np.int16).T)
        if len(self._cache) < 4096:
            self._cache[a.coeffs] = m
        return m

    def rank(self, a) -> int:
        return self.matrix(a).rank()

    def _rep_fp_matrix(self):
        if self._fp_matrix is None:
            basis = self.ring.monomial_basis()
            cols = [self.matrix(b).to_fp_vector() for b in basis]
            self._fp_matrix = np.array(cols, dtype=np.int64).T
            self._fp_matrix_inv = fp_inv(self._fp_matrix, self.ring.tower.p)
        return self._fp_matrix, self._fp_matrix_inv

    def from_matrix(self, m: MatrixEF) -> QuotElement:
        """Preimage of a matrix under the isomorphism."""
        _, inv = self._rep_fp_matrix()
        vec = (inv @ m.to_fp_vector()) % self.ring.tower.p
        return self.ring.from_fp_vector(vec)

    def verify(self, pairs=64, seed=0):
        """Homomorphism spot check; returns a summary dict (used by the CLI)."""
        rng = random.Random(seed)
        ring = self.ring
        ok_mul = ok_add = True
        for _ in range(pairs):
            a, b = ring.random_element(rng), ring.random_element(rng)
            if self.matrix(a * b) != self.matrix(a) @ self.matrix(b):
                ok_mul = False
            if self.matrix(a + b) != self.matrix(a) + self.matrix(b):
                ok_add = False
        ident = self.matrix(ring.one()) == MatrixEF.identity(ring.tower, self.n)
        try:
            self._rep_fp_matrix()
            bijective = True
        except SkewlabError:
            bijective = False
        return {
            "g": self.g.to_text(),
            "multiplicative": ok_mul,
            "additive": ok_add,
            "identity": ident,
            "bijective": bijective,
        }


# ---------------------------------------------------------------------------
# divisor search and context construction
# ---------------------------------------------------------------------------

def _monic_candidates(tower, s):
    """Monic degree-s skew polynomials in lexicographic coefficient order."""
    big = tower.level("big")
    order = sorted(range(big.size), key=big.tuple_key)

    def rec(depth):
        if depth == 0:
            yield ()
            return
        for head in order:
            for tail in rec(depth - 1):
                yield (head,) + tail

    for flat in rec(s):
        yield SkewPoly(tower, list(flat) + [1])


def find_right_divisor(ring: QuotRing, randomized=False, seed=0, limit=_SEARCH_LIMIT) -> SkewPoly:
    """A monic degree-s right divisor of F(x^n).

    Deterministic mode scans candidates in lexicographic order; the randomized
    shortcut draws random elements and keeps gcrd(rep, F(x^n)) when it has
    degree exactly s.  Both must succeed by the structure theory; exhausting
    the space signals an arithmetic bug.
    """
    tw = ring.tower
    s = ring.F.degree
    if randomized:
        from .skew import gcrd_bezout

        rng = random.Random(seed)
        for _ in range(512):
            a = ring.random_element(rng)
            if a.is_zero():
                continue
            d, _, _ = gcrd_bezout(a.rep, ring.fxn)
            if d.degree == s:
                return d
        # fall through to the deterministic scan
    count = tw.level("big").size ** s
    if count > limit:
        raise ScaleTooLarge(f"divisor search space {count} exceeds limit {limit}")
    for cand in _monic_candidates(tw, s):
        if right_divide(ring.fxn, cand)[1].is_zero():
            return cand
    raise NoDivisorFound("no degree-s right divisor of F(x^n); arithmetic bug")


def build_rep(ring: QuotRing, randomized=False, seed=0) -> RepContext:
    """Representation context; the deterministic variant is cached on the ring."""
    if not randomized and ring._rep_cache.get("det") is not None:
        return ring._rep_cache["det"]
    g = find_right_divisor(ring, randomized=randomized, seed=seed)
    ctx = RepContext(ring, g)
    if not randomized:
        ring._rep_cache["det"] = ctx
    return ctx


def rep_rank(ctx: RepContext, a) -> int:
    return ctx.rank(a)


# ---------------------------------------------------------------------------
# intertwiners
# ---------------------------------------------------------------------------

def _generating_pairs(ctx1, ctx2, transform):
    """Pairs (A1, A2) over the algebra generators x and a primitive scalar."""
    ring = ctx1.ring
    tw = ring.tower
    gens = [ring.x_class(), ring.scalar(tw.generator("big"))]
    return [transform(ctx1, ctx2, a) for a in gens]


def _solve_intertwiner(tower, pairs):
    """Invertible N with N A1 = A2 N for every (A1, A2); unique up to scalars."""
    ef = tower.level("ef")
    n = pairs[0][0].n
    rows = []
    for A1, A2 in pairs:
        a1, a2 = A1.arr, A2.arr
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[i * n + k] = ef.add(row[i * n + k], int(a1[k, j]))
                for k in range(n):
                    row[k * n + j] = ef.sub(row[k * n + j], int(a2[i, k]))
                rows.append(row)
    null = lv_nullspace(rows, ef)
    candidates = []
    for v in null:
        m = MatrixEF(tower, np.array(v, dtype=np.int16).reshape(n, n))
        if m.rank() == n:
            candidates.append(m)
    if not candidates:
        raise NoInvertibleSolution("intertwiner system has no invertible solution")
    return _canonical_scaling(candidates[0]), len(null)


def _canonical_scaling(m: MatrixEF):
    """Lexicographically least nonzero scalar multiple (digit-tuple order)."""
    ef = m._lv()
    best = None
    best_key = None
    for lam in range(1, ef.size):
        cand = m.scale(lam)
        key = tuple(ef.tuple_key(int(c)) for c in cand.arr.reshape(-1))
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return best


def skolem_noether(ctx1: RepContext, ctx2: RepContext) -> MatrixEF:
    """N in GL_n with ctx2.matrix(a) = N ctx1.matrix(a) N^{-1} for all a."""
    if ctx1.ring != ctx2.ring:
        raise RingMismatch("contexts over different rings")

    def pair(c1, c2, a):
        return (c1.matrix(a), c2.matrix(a))

    N, dim = _solve_intertwiner(ctx1.ring.tower, _generating_pairs(ctx1, ctx2, pair))
    return N


class TransposeBridge:
    """Invertible N and the reciprocal-ring isomorphism M' realizing

        M(a)^T  =  N^{-1} M'(adjoint(a)) N   for all a in R_F.
    """

    def __init__(self, ctx_f, ctx_hat, N):
        self.ctx_f = ctx_f
        self.ctx_hat = ctx_hat
        self.N = N
        self._N_inv = N.inverse()

    def holds_for(self, a) -> bool:
        lhs = self.ctx_f.matrix(a).transpose()
        rhs = self._N_inv @ self.ctx_hat.matrix(adjoint_element(a)) @ self.N
        return lhs == rhs


def transpose_bridge(ctx_f: RepContext, ctx_fhat: RepContext) -> TransposeBridge:
    """Solve the transpose-compatibility problem between R_F and R_{Fhat}.

    The adjoint map sends the class of x^n to the inverse of its counterpart,
    so the reciprocal-ring isomorphism must identify its center through the
    inverse root; when `ctx_fhat` uses a different root, the Galois-conjugate
    context over the same module is substituted (the theorem quantifies over
    the isomorphism, not over a fixed one).
    """
    if ctx_fhat.ring != ctx_f.ring.reciprocal_ring():
        raise RingMismatch("second context must live over the reciprocal ring")
    ef = ctx_f.ring.tower.level("ef")
    needed = ef.inv(ctx_f.root)
    ctx_hat = ctx_fhat
    if ctx_fhat.root != needed:
        ctx_hat = RepContext(ctx_fhat.ring, ctx_fhat.g, root_override=needed)

    def pair(c1, c2, a):
        return (c1.matrix(a).transpose(), c2.matrix(adjoint_element(a)))

    N, _ = _solve_intertwiner(ctx_f.ring.tower, _generating_pairs(ctx_f, ctx_hat, pair))
    return TransposeBridge(ctx_f, ctx_hat, N)


def intertwiner_space_dim(ctx1: RepContext, ctx2: RepContext) -> int:
    """Dimension over F_{q^s} of the solution space (1 by Schur's lemma)."""
    def pair(c1, c2, a):
        return (c1.matrix(a), c2.matrix(a))

    _, dim = _solve_intertwiner(ctx1.ring.tower, _generating_pairs(ctx1, ctx2, pair))
    return dim


# ---------------------------------------------------------------------------
# the bilinear-compatibility unit
# ---------------------------------------------------------------------------

def matrix_pairing_fp(tower, A: MatrixEF, B: MatrixEF) -> int:
    """Tr_{q^s/p}(Tr(A B)) as an F_p value."""
    ef = tower.level("ef")
    return int(ef.trace_fp_t[(A @ B).trace_idx()])


def bilinear_unit(ctx: RepContext) -> QuotElement:
    """The unit u with <a,b>_F = Tr_{q^s/p} Tr(M(a) M(b) M(u)) for all a, b."""
    from .linalg import fp_solve

    ring = ctx.ring
    tw = ring.tower
    ef = tw.level("ef")
    basis = ring.monomial_basis()
    mats = [ctx.matrix(b) for b in basis]
    dim = len(basis)
    rows, rhs = [], []
    for r in range(dim):
        for c in range(dim):
            P = mats[r] @ mats[c]
            row = [matrix_pairing_fp(tw, P, mats[m]) for m in range(dim)]
            rows.append(row)
            rhs.append(int(ring.trace_form(basis[r], basis[c]).idx))
    sol = fp_solve(np.array(rows, dtype=np.int64), np.array(rhs, dtype=np.int64), tw.p)
    if sol is None:
        raise NoUnitSolution("no unit transports the trace form")
    vec = np.zeros(ring.dim_fp, dtype=np.int64)
    for m, lam in enumerate(sol):
        if lam:
            vec = (vec + int(lam) * ring.to_fp_vector(basis[m])) % tw.p
    u = ring.from_fp_vector(vec)
    if ctx.rank(u) != ctx.n:
        raise NoUnitSolution("trace-form unit is singular")
    return u
