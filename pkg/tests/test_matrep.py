import random

import numpy as np
import pytest

import skewlab as sl
from skewlab.errors import NotInvertible
from skewlab.gf import FieldElement, trace_norm
from skewlab.linalg import fp_rank
from skewlab.matrep import (
    MatrixEF,
    RepContext,
    bilinear_unit,
    build_rep,
    find_right_divisor,
    intertwiner_space_dim,
    matrix_pairing_fp,
    skolem_noether,
    transpose_bridge,
)
from skewlab.quot import adjoint_element
from skewlab.skew import right_divide

from conftest import make_ring
from oracles import evaluation_rank


def test_divisor_is_degree_s_divisor(grid_ring):
    g = find_right_divisor(grid_ring)
    assert g.degree == grid_ring.F.degree
    assert g.is_monic()
    assert right_divide(grid_ring.fxn, g)[1].is_zero()


def test_scalar_case_divisor_has_norm_one():
    ring = make_ring(2, 3, 1)  # F = y - 1: g = x - beta with N(beta) = 1
    g = find_right_divisor(ring)
    beta = -g.coefficient(0)
    assert trace_norm(beta, "mid", kind="norm") == ring.tower.one("mid")


def test_rep_identity_and_homomorphism(grid_ring):
    ctx = build_rep(grid_ring)
    n = grid_ring.tower.n
    assert ctx.matrix(grid_ring.one()) == MatrixEF.identity(grid_ring.tower, n)
    rng = random.Random(0)
    for _ in range(300):
        a = grid_ring.random_element(rng)
        b = grid_ring.random_element(rng)
        assert ctx.matrix(a * b) == ctx.matrix(a) @ ctx.matrix(b)
        assert ctx.matrix(a + b) == ctx.matrix(a) + ctx.matrix(b)


def test_rep_center_goes_to_scalars(grid_ring):
    ctx = build_rep(grid_ring)
    tw = grid_ring.tower
    n = tw.n
    w = grid_ring.x_class(tw.n)  # the center generator
    M = ctx.matrix(w)
    assert M == MatrixEF.identity(tw, n).scale(ctx.root)


def test_rep_bijective(grid_ring):
    ctx = build_rep(grid_ring)
    rng = random.Random(1)
    for _ in range(50):
        a = grid_ring.random_element(rng)
        assert ctx.from_matrix(ctx.matrix(a)) == a


def test_rep_rank_bounds_and_units(grid_ring):
    ctx = build_rep(grid_ring)
    n = grid_ring.tower.n
    assert ctx.rank(grid_ring.one()) == n
    assert ctx.rank(grid_ring.zero()) == 0
    g_cls = grid_ring.element(ctx.g)
    assert ctx.rank(g_cls) == n - 1
    rng = random.Random(2)
    for _ in range(100):
        a = grid_ring.random_element(rng)
        r = ctx.rank(a)
        assert 0 <= r <= n
        assert (r == n) == a.is_unit()


def test_rank_independent_of_representation(grid_ring):
    ctx1 = build_rep(grid_ring)
    ctx2 = build_rep(grid_ring, randomized=True, seed=11)
    rng = random.Random(3)
    for _ in range(300):
        a = grid_ring.random_element(rng)
        assert ctx1.rank(a) == ctx2.rank(a)


def test_rank_matches_evaluation_oracle():
    for (q, n) in [(2, 3), (2, 4), (3, 4)]:
        ring = make_ring(q, n, 1)
        ctx = build_rep(ring)
        rng = random.Random(4)
        for _ in range(150):
            a = ring.random_element(rng)
            assert ctx.rank(a) == evaluation_rank(a)


def test_skolem_noether_self_and_cross(grid_ring):
    ctx1 = build_rep(grid_ring)
    N_self = skolem_noether(ctx1, ctx1)
    n = grid_ring.tower.n
    assert N_self.rank() == n
    ctx2 = build_rep(grid_ring, randomized=True, seed=5)
    N = skolem_noether(ctx1, ctx2)
    Ninv = N.inverse()
    rng = random.Random(6)
    for _ in range(300):
        a = grid_ring.random_element(rng)
        assert N @ ctx1.matrix(a) @ Ninv == ctx2.matrix(a)


def test_intertwiner_space_is_a_line(grid_ring):
    ctx1 = build_rep(grid_ring)
    ctx2 = build_rep(grid_ring, randomized=True, seed=7)
    assert intertwiner_space_dim(ctx1, ctx2) == 1


def test_transpose_bridge_identity_element(grid_ring):
    ctx = build_rep(grid_ring)
    hat = build_rep(grid_ring.reciprocal_ring())
    br = transpose_bridge(ctx, hat)
    assert br.N.rank() == grid_ring.tower.n
    assert br.holds_for(grid_ring.one())


def test_transpose_bridge_on_all_monomials(grid_ring):
    ctx = build_rep(grid_ring)
    hat = build_rep(grid_ring.reciprocal_ring())
    br = transpose_bridge(ctx, hat)
    for b in grid_ring.monomial_basis():
        assert br.holds_for(b)


def test_transpose_preserves_rank(grid_ring):
    ctx = build_rep(grid_ring)
    hat_ctx = transpose_bridge(ctx, build_rep(grid_ring.reciprocal_ring())).ctx_hat
    rng = random.Random(8)
    for _ in range(300):
        a = grid_ring.random_element(rng)
        r = ctx.rank(a)
        assert ctx.matrix(a).transpose().rank() == r
        assert hat_ctx.rank(adjoint_element(a)) == r


def test_matrix_trace_form_nondegenerate(grid_ring):
    tw = grid_ring.tower
    n = tw.n
    ef = tw.level("ef")
    dim = n * n * ef.deg
    mats = []
    for t in range(dim):
        v = np.zeros(dim, dtype=np.int64)
        v[t] = 1
        mats.append(MatrixEF.from_fp_vector(tw, n, v))
    gram = [[matrix_pairing_fp(tw, A, B) for B in mats] for A in mats]
    assert fp_rank(np.array(gram), tw.p) == dim


def test_bilinear_unit_smallest_ring():
    ring = make_ring(2, 2, 1)  # q=2, n=2, s=1, F=y-1
    ctx = build_rep(ring)
    u = bilinear_unit(ctx)
    assert ctx.rank(u) == 2
    basis = ring.monomial_basis()
    Mu = ctx.matrix(u)
    for a in basis:
        for b in basis:
            lhs = matrix_pairing_fp(ring.tower, ctx.matrix(a) @ ctx.matrix(b), Mu)
            assert lhs == int(ring.trace_form(a, b).idx)


def test_bilinear_unit_grid(grid_ring):
    ctx = build_rep(grid_ring)
    u = bilinear_unit(ctx)
    assert ctx.rank(u) == grid_ring.tower.n
    basis = grid_ring.monomial_basis()
    Mu = ctx.matrix(u)
    for a in basis:
        for b in basis:
            lhs = matrix_pairing_fp(grid_ring.tower, ctx.matrix(a) @ ctx.matrix(b), Mu)
            assert lhs == int(grid_ring.trace_form(a, b).idx)
    # linearity transport on random combinations
    rng = random.Random(9)
    for _ in range(50):
        a = grid_ring.random_element(rng)
        b = grid_ring.random_element(rng)
        lhs = matrix_pairing_fp(grid_ring.tower, ctx.matrix(a) @ ctx.matrix(b), Mu)
        assert lhs == int(grid_ring.trace_form(a, b).idx)


def test_matrix_inverse_and_errors(small_ring):
    ctx = build_rep(small_ring)
    tw = small_ring.tower
    x = ctx.matrix(small_ring.x_class())
    assert x @ x.inverse() == MatrixEF.identity(tw, tw.n)
    singular = ctx.matrix(small_ring.element(ctx.g))
    with pytest.raises(NotInvertible):
        singular.inverse()


def test_matrix_text_form(small_ring):
    ctx = build_rep(small_ring)
    txt = ctx.matrix(small_ring.x_class()).to_text()
    rows = txt.split("|")
    assert len(rows) == small_ring.tower.n
    assert all(len(r.split(";")) == small_ring.tower.n for r in rows)
