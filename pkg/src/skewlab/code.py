"""Additive rank-metric codes inside R_F (equivalently M_n(F_{q^s})).

Codes are stored skew-side as an F_p-basis of generators with a declared
linearity subfield; matrices only appear through a representation context.
Exhaustive enumeration (minimum distance, rank distribution) is vectorized
over blocks of codewords; all invariant computations are exact F_p linear
algebra on the coordinates of R_F.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    NoInvertibleCodeword,
    NotInvertible,
    RingMismatch,
    SkewlabError,
    TooLarge,
)
from .linalg import batch_rank, fp_in_span, fp_nullspace, fp_rank, fp_row_span_key, fp_rref
from .matrep import MatrixEF, build_rep
from .quot import QuotElement, QuotRing, adjoint_element

DEFAULT_BUDGET = 2 ** 24
_BLOCK_DIGITS_CAP = 15  # p^t codewords materialized at once, p^t <= 2^15-ish


def enumeration_budget():
    env = os.environ.get("SKEWLAB_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SkewlabError(f"SKEWLAB_BUDGET={env!r} is not an integer") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class NuclearParameters:
    """Cardinalities (|C|, |I_left|, |I_right|, |Cen|, |Z|), all powers of p."""

    size: int
    left_idealiser: int
    right_idealiser: int
    centraliser: int
    centre: int

    def as_tuple(self):
        return (self.size, self.left_idealiser, self.right_idealiser,
                self.centraliser, self.centre)

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.as_tuple()) + ")"


class RankCode:
    """F_p-linear rank-metric code given by independent skew-side generators."""

    def __init__(self, ring: QuotRing, gens, k_dim=1, check=True):
        self.ring = ring
        self.gens = tuple(ring.element(g) for g in gens)
        self.k_dim = int(k_dim)
        tw = ring.tower
        vecs = [ring.to_fp_vector(g) for g in self.gens]
        self._coord_matrix = (
            np.array(vecs, dtype=np.int64) if vecs else np.zeros((0, ring.dim_fp), dtype=np.int64)
        )
        self._rref = fp_rref(self._coord_matrix, tw.p) if vecs else (self._coord_matrix, [])
        if check:
            if len(self._rref[1]) != len(self.gens):
                raise SkewlabError("generators are not F_p-independent")
            if tw.e * tw.n % self.k_dim:
                raise SkewlabError(f"K_dim={self.k_dim} is not a subfield degree")
            for kappa in tw.subfield_basis(self.k_dim):
                scal = ring.scalar(kappa)
                for g in self.gens:
                    if not self.contains(scal * g):
                        raise SkewlabError("code is not closed under its declared K")

    # -- structure -----------------------------------------------------------------
    @property
    def dim_p(self):
        return len(self.gens)

    @property
    def cardinality(self):
        return self.ring.tower.p ** self.dim_p

    def contains(self, a: QuotElement) -> bool:
        return fp_in_span(self._rref, self.ring.to_fp_vector(self.ring.element(a)), self.ring.tower.p)

    def span_key(self):
        """Canonical identifier of the code as an F_p-subspace."""
        return fp_row_span_key(self._coord_matrix, self.ring.tower.p)

    def same_space(self, other: "RankCode") -> bool:
        if self.ring != other.ring:
            raise RingMismatch("codes live in different rings")
        return self.span_key() == other.span_key()

    def rep(self):
        return build_rep(self.ring)

    def codeword(self, digits) -> QuotElement:
        out = self.ring.zero()
        for d, g in zip(digits, self.gens):
            if d:
                out = out + self.ring.scalar(int(d) % self.ring.tower.p) * g
        return out

    def codewords(self):
        """All codewords, enumeration order = little-endian digit counting."""
        p = self.ring.tower.p
        for idx in range(self.cardinality):
            digits = []
            v = idx
            for _ in range(self.dim_p):
                digits.append(v % p)
                v //= p
            yield self.codeword(digits)

    # -- enumeration ------------------------------------------------------------------
    def _gen_matrices(self, ctx):
        return [ctx.matrix(g) for g in self.gens]

    def rank_distribution(self, ctx=None, budget=None, workers=1):
        """Exact multiset of codeword ranks as a (n+1)-vector of counts."""
        if budget is None:
            budget = enumeration_budget()
        if self.cardinality > budget:
            raise TooLarge(
                f"|C| = {self.cardinality} exceeds the enumeration budget {budget}"
            )
        ctx = ctx or self.rep()
        tw = self.ring.tower
        p, n = tw.p, tw.n
        ef = tw.level("ef")
        mats = self._gen_matrices(ctx)
        dim = self.dim_p
        counts = np.zeros(n + 1, dtype=np.int64)
        if dim == 0:
            counts[0] = 1
            return counts
        # scalar multiples of each generator matrix, as ef codes
        scaled = []
        for m in mats:
            scaled.append([m.scale(c).arr for c in range(p)])
        t = 0
        while t < dim and p ** (t + 1) <= 2 ** _BLOCK_DIGITS_CAP:
            t += 1
        block = np.zeros((1, n, n), dtype=np.int16)
        for d in range(t):
            parts = [ef.add_t[block, scaled[d][c][None, :, :]] for c in range(p)]
            block = np.concatenate(parts, axis=0)
        highs = [np.zeros((n, n), dtype=np.int16)]
        for d in range(t, dim):
            highs = [ef.add_t[h, scaled[d][c]] for h in highs for c in range(p)]
        # `workers` only partitions the chunk list; the reduction is order-free
        for h in highs:
            chunk = ef.add_t[block, h[None, :, :]]
            ranks = batch_rank(chunk, ef)
            counts += np.bincount(ranks, minlength=n + 1)
        return counts

    def min_distance(self, ctx=None, budget=None, workers=1) -> int:
        counts = self.rank_distribution(ctx=ctx, budget=budget, workers=workers)
        nz = np.flatnonzero(counts[1:])
        if nz.size == 0:
            raise SkewlabError("zero code has no minimum distance")
        return int(nz[0]) + 1

    def is_mrd(self, ctx=None, budget=None):
        """(flag, d, bound) for the Singleton-like bound |C| <= (q^s)^(n(n-d+1))."""
        d = self.min_distance(ctx=ctx, budget=budget)
        tw = self.ring.tower
        qs = tw.q ** self.ring.F.degree
        bound = qs ** (tw.n * (tw.n - d + 1))
        return self.cardinality == bound, d, bound

    # -- derived codes ------------------------------------------------------------------
    def adjoint_code(self) -> "RankCode":
        """Generator-wise image under the adjoint map, over the reciprocal ring."""
        return RankCode(
            self.ring.reciprocal_ring(),
            [adjoint_element(g) for g in self.gens],
            k_dim=self.k_dim,
        )

    def orthogonal_space(self):
        """Basis of {b : <g, b>_F = 0 for all generators g} inside R_F."""
        ring = self.ring
        basis = ring.monomial_basis()
        rows = [
            [int(ring.trace_form(g, b).idx) for b in basis]
            for g in self.gens
        ]
        null = fp_nullspace(np.array(rows, dtype=np.int64), ring.tower.p) if rows else []
        if not rows:
            return basis
        return [ring.from_fp_vector(v) for v in null]

    def dual_code(self) -> "RankCode":
        """Dual code: the form-orthogonal space pushed through the adjoint map."""
        orth = self.orthogonal_space()
        return RankCode(
            self.ring.reciprocal_ring(),
            [adjoint_element(b) for b in orth],
            k_dim=self.k_dim,
        )

    # -- equivalence -----------------------------------------------------------------------
    def apply_equivalence(self, left=None, right=None, rho_exp=0, ctx=None) -> "RankCode":
        """The equivalent code  U . C^rho . V  (matrix side).

        `left`/`right` may be MatrixEF, unit QuotElements, or None (identity);
        rho is the entrywise automorphism y -> y^(p^rho_exp) of F_{q^s}.
        """
        ring = self.ring
        skew_only = rho_exp % ring.tower.level("ef").deg == 0 and not (
            isinstance(left, MatrixEF) or isinstance(right, MatrixEF)
        )
        if skew_only:
            u = ring.element(left) if left is not None else ring.one()
            v = ring.element(right) if right is not None else ring.one()
            if not u.is_unit() or not v.is_unit():
                raise NotInvertible("equivalence requires invertible translations")
            return RankCode(ring, [u * g * v for g in self.gens], k_dim=self.k_dim)
        ctx = ctx or self.rep()
        n = ctx.n
        tw = ring.tower
        ident = MatrixEF.identity(tw, n)
        U = left if isinstance(left, MatrixEF) else (
            ident if left is None else ctx.matrix(ring.element(left))
        )
        V = right if isinstance(right, MatrixEF) else (
            ident if right is None else ctx.matrix(ring.element(right))
        )
        if U.rank() != n or V.rank() != n:
            raise NotInvertible("equivalence requires invertible matrices")
        gens = [
            ctx.from_matrix(U @ ctx.matrix(g).entrywise_frob_p(rho_exp) @ V)
            for g in self.gens
        ]
        return RankCode(ring, gens, k_dim=self.k_dim)

    # -- invariants --------------------------------------------------------------------------
    def find_invertible_codeword(self) -> QuotElement:
        one = self.ring.one()
        if self.contains(one):
            return one
        for c in self.codewords():
            if not c.is_zero() and c.is_unit():
                return c
        raise NoInvertibleCodeword("code has no invertible codeword (so it is not MRD)")

    def _membership_rows(self):
        """Matrix whose kernel is exactly the coordinate space of the code."""
        p = self.ring.tower.p
        R, pivots = self._rref
        nn = self.ring.dim_fp
        rows = []
        free = [c for c in range(nn) if c not in pivots]
        for fc in free:
            row = np.zeros(nn, dtype=np.int64)
            row[fc] = p - 1  # -1
            for ri, c in enumerate(pivots):
                row[c] = R[ri, fc]
            rows.append(row)
        return np.array(rows, dtype=np.int64) if rows else np.zeros((0, nn), dtype=np.int64)

    def normalized_to_identity(self) -> "RankCode":
        """The equivalent code c0^{-1} C containing the identity matrix."""
        if self.contains(self.ring.one()):
            return self
        c0 = self.find_invertible_codeword()
        return RankCode(self.ring, [c0.inverse() * g for g in self.gens],
                        k_dim=self.k_dim, check=False)

    def invariant_subalgebras(self, normalize_identity=True):
        """Bases of the four invariant subalgebras, as lists of QuotElements.

        With `normalize_identity` the code is first translated by the inverse
        of an invertible codeword so that it contains the identity (the
        centraliser and centre are only equivalence invariants then).
        """
        code = self.normalized_to_identity() if normalize_identity else self
        return code._subalgebras_raw()

    def _subalgebras_raw(self):
        ring = self.ring
        p = ring.tower.p
        basis = ring.monomial_basis()
        member = self._membership_rows()

        def mult_operator(g, side):
            cols = []
            for b in basis:
                prod = b * g if side == "L" else g * b
                cols.append(ring.to_fp_vector(prod))
            return np.array(cols, dtype=np.int64).T  # acts on coordinate columns

        left_rows, right_rows, cen_rows = [], [], []
        for g in self.gens:
            LG = mult_operator(g, "L")   # u -> u g
            GL = mult_operator(g, "R")   # u -> g u
            left_rows.append(member @ LG % p)
            right_rows.append(member @ GL % p)
            cen_rows.append((LG - GL) % p)
        sub = {
            "left_idealiser": fp_nullspace(np.vstack(left_rows), p),
            "right_idealiser": fp_nullspace(np.vstack(right_rows), p),
            "centraliser": fp_nullspace(np.vstack(cen_rows), p),
            "centre": fp_nullspace(np.vstack(left_rows + cen_rows), p),
        }
        return {k: [ring.from_fp_vector(v) for v in vs] for k, vs in sub.items()}

    def invariants(self, normalize_identity=True) -> NuclearParameters:
        """Nuclear parameters via exact linear systems on the skew side."""
        sub = self.invariant_subalgebras(normalize_identity=normalize_identity)
        p = self.ring.tower.p
        return NuclearParameters(
            size=self.cardinality,
            left_idealiser=p ** len(sub["left_idealiser"]),
            right_idealiser=p ** len(sub["right_idealiser"]),
            centraliser=p ** len(sub["centraliser"]),
            centre=p ** len(sub["centre"]),
        )

    def field_certificate(self, basis_els) -> bool:
        """Closure under products plus invertibility of every nonzero element."""
        ring = self.ring
        p = ring.tower.p
        els = list(basis_els)
        if not els:
            return False
        rref = fp_rref(np.array([ring.to_fp_vector(a) for a in els], dtype=np.int64), p)
        for a in els:
            for b in els:
                if not fp_in_span(rref, ring.to_fp_vector(a * b), p):
                    return False
        if len(els) > 14:
            raise TooLarge("field certificate would enumerate too many elements")
        total = p ** len(els)
        for idx in range(1, total):
            digits, v = [], idx
            for _ in range(len(els)):
                digits.append(v % p)
                v //= p
            el = ring.zero()
            for d, a in zip(digits, els):
                if d:
                    el = el + ring.scalar(d) * a
            if not el.is_unit():
                return False
        return True
