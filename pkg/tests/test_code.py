import random

import numpy as np
import pytest

import skewlab as sl
from skewlab.code import RankCode
from skewlab.errors import NotInvertible, TooLarge
from skewlab.families import DParams, SParams, build_D, build_S, scan_gammas
from skewlab.matrep import MatrixEF, bilinear_unit, build_rep, transpose_bridge
from skewlab.quot import adjoint_element, dual_involution_unit
from skewlab.skew import CenterPoly

from conftest import make_ring
from oracles import matrix_side_dual_span, matrix_span_key, naive_min_distance


def full_space_code(ring):
    return RankCode(ring, ring.monomial_basis(), k_dim=ring.tower.e)


def scalar_code(ring):
    """The embedded copy of F_{q^s} (the center) as a code."""
    tw = ring.tower
    gens = []
    for d in range(ring.F.degree):
        for c in range(tw.e):
            coeffs = [0] * ring.F.degree
            coeffs[d] = tw.p ** c
            gens.append(ring.center_element(coeffs))
    return RankCode(ring, gens, k_dim=tw.e)


def gabidulin_code():
    tw = sl.tower(2, 1, 3, 1)
    F = CenterPoly.canonical(tw)
    return build_S(SParams(F, 2, tw.zero("big"), 0))


def test_full_space_distance_one(small_ring):
    C = full_space_code(small_ring)
    assert C.min_distance() == 1
    mrd, d, bound = C.is_mrd()
    assert mrd and d == 1 and bound == C.cardinality


def test_scalar_code_distance_n(small_ring):
    C = scalar_code(small_ring)
    assert C.min_distance() == small_ring.tower.n
    mrd, _, _ = C.is_mrd()
    assert not mrd  # q^s < (q^s)^n for n >= 2


def test_gabidulin_distance_and_count():
    C = gabidulin_code()
    assert C.cardinality == 64
    counts = C.rank_distribution()
    assert int(counts.sum()) == 64 and counts[0] == 1
    assert C.min_distance() == 2
    mrd, d, _ = C.is_mrd()
    assert mrd and d == 2


def test_min_distance_matches_naive_enumeration(small_ring):
    tw = small_ring.tower
    F = small_ring.F
    C = build_S(SParams(F, 1, tw.zero("big"), 0))
    ctx = build_rep(small_ring)
    assert C.min_distance(ctx=ctx) == naive_min_distance(C, ctx)
    D = full_space_code(small_ring)
    assert D.min_distance(ctx=ctx) == naive_min_distance(D, ctx)


def test_budget_enforced():
    C = gabidulin_code()
    with pytest.raises(TooLarge):
        C.min_distance(budget=10)


def test_budget_env_override(monkeypatch):
    from skewlab.code import enumeration_budget

    monkeypatch.setenv("SKEWLAB_BUDGET", "12345")
    assert enumeration_budget() == 12345
    monkeypatch.delenv("SKEWLAB_BUDGET")
    assert enumeration_budget() == 2 ** 24


def test_workers_do_not_change_results():
    C = gabidulin_code()
    base = C.rank_distribution(workers=1)
    for w in (2, 3):
        assert np.array_equal(C.rank_distribution(workers=w), base)


def test_adjoint_full_space(small_ring):
    C = full_space_code(small_ring)
    A = C.adjoint_code()
    assert A.dim_p == C.dim_p
    assert A.ring == small_ring.reciprocal_ring()
    assert A.same_space(full_space_code(A.ring))


def test_adjoint_preserves_distance_and_rank_distribution():
    for args in [(2, 2, 2, 1), (3, 2, 2, 1), (2, 3, 1, 2)]:
        q, n, s, k = args
        ring = make_ring(q, n, s)
        tw = ring.tower
        C = build_S(SParams(ring.F, k, tw.zero("big"), 0))
        A = C.adjoint_code()
        assert np.array_equal(C.rank_distribution(), A.rank_distribution())
        assert C.min_distance() == A.min_distance()


def test_double_adjoint_is_identity(grid_ring):
    rng = random.Random(0)
    gens = [grid_ring.random_element(rng) for _ in range(3)]
    while True:
        try:
            C = RankCode(grid_ring, gens, k_dim=1)
            break
        except sl.SkewlabError:
            gens = [grid_ring.random_element(rng) for _ in range(3)]
    assert C.adjoint_code().adjoint_code().same_space(C)


def test_dual_of_full_and_zero(small_ring):
    full = full_space_code(small_ring)
    dual = full.dual_code()
    assert dual.dim_p == 0
    zero = RankCode(small_ring, [], k_dim=1)
    dz = zero.dual_code()
    assert dz.dim_p == small_ring.dim_fp


def test_dual_dimension_formula(grid_ring):
    rng = random.Random(1)
    for trial in range(3):
        gens = []
        for _ in range(trial + 2):
            gens.append(grid_ring.random_element(rng))
        try:
            C = RankCode(grid_ring, gens, k_dim=1)
        except sl.SkewlabError:
            continue
        orth = C.orthogonal_space()
        assert C.dim_p + len(orth) == grid_ring.dim_fp
        D = C.dual_code()
        assert C.dim_p + D.dim_p == grid_ring.dim_fp


def test_dual_of_mrd_is_mrd_with_complementary_distance():
    C = gabidulin_code()  # d = 2 = n - k + 1 with n=3, k=2
    D = C.dual_code()
    mrd, d, _ = D.is_mrd()
    assert mrd and d == 3  # k + 1


def test_dual_matches_matrix_side_oracle():
    """Delsarte dual computed directly on matrices equals the skew-side dual
    after the proof-level unit translation N (U^T)^{-1} . N^{-1}."""
    for (q, n, s, k) in [(2, 2, 2, 1), (2, 3, 1, 2), (3, 2, 2, 1)]:
        ring = make_ring(q, n, s)
        tw = ring.tower
        C = build_S(SParams(ring.F, k, tw.zero("big"), 0))
        ctx = build_rep(ring)
        bridge = transpose_bridge(ctx, build_rep(ring.reciprocal_ring()))
        U = ctx.matrix(bilinear_unit(ctx))
        oracle = matrix_side_dual_span(C, ctx)  # list of matrices, the true dual
        D = C.dual_code()
        lhs = [bridge.ctx_hat.matrix(g) for g in D.gens]
        Ut_inv = U.transpose().inverse()
        N, Ninv = bridge.N, bridge.N.inverse()
        translated = [N @ (Ut_inv @ M) @ Ninv for M in oracle]
        # M'(dual(C)) spans the same space as N (U^T)^{-1} C^perp N^{-1}
        assert matrix_span_key(tw, lhs) == matrix_span_key(tw, translated)


def test_double_dual_is_central_unit_translate(grid_ring):
    tw = grid_ring.tower
    C = build_S(SParams(grid_ring.F, 1, tw.zero("big"), 0))
    D2 = C.dual_code().dual_code()
    assert D2.ring == grid_ring
    u0 = dual_involution_unit(grid_ring)
    translated = RankCode(grid_ring, [g * u0 for g in D2.gens], k_dim=1, check=False)
    assert translated.same_space(C)
    if grid_ring.F.degree == 1:
        assert D2.same_space(C)  # u0 = 1 for F = y - 1


def test_apply_equivalence_identity(small_ring):
    C = build_S(SParams(small_ring.F, 1, small_ring.tower.zero("big"), 0))
    same = C.apply_equivalence()
    assert same.same_space(C)


def test_apply_equivalence_preserves_metrics():
    ring = make_ring(2, 2, 2)
    C = build_S(SParams(ring.F, 1, ring.tower.zero("big"), 0))
    d0 = C.min_distance()
    inv0 = C.invariants()
    rng = random.Random(2)
    done = 0
    while done < 5:
        u = ring.random_element(rng)
        v = ring.random_element(rng)
        if not (u.is_unit() and v.is_unit()):
            continue
        C2 = C.apply_equivalence(u, v)
        assert C2.cardinality == C.cardinality
        assert C2.min_distance() == d0
        inv2 = C2.invariants()
        assert inv2.left_idealiser == inv0.left_idealiser
        assert inv2.right_idealiser == inv0.right_idealiser
        assert inv2.centraliser == inv0.centraliser
        assert inv2.centre == inv0.centre
        done += 1


def test_apply_equivalence_matrix_side_with_rho():
    ring = make_ring(2, 2, 2)
    tw = ring.tower
    C = build_S(SParams(ring.F, 1, tw.zero("big"), 0))
    ctx = build_rep(ring)
    d0 = C.min_distance()
    C2 = C.apply_equivalence(ctx.matrix(ring.x_class()), None, rho_exp=1, ctx=ctx)
    assert C2.min_distance() == d0
    assert C2.cardinality == C.cardinality
    with pytest.raises(NotInvertible):
        C.apply_equivalence(ctx.matrix(ring.element(ctx.g)), None, ctx=ctx)


def test_equivalence_skew_and_matrix_paths_agree():
    ring = make_ring(3, 2, 2)
    tw = ring.tower
    C = build_S(SParams(ring.F, 1, tw.zero("big"), 0))
    ctx = build_rep(ring)
    u = ring.x_class()
    v = ring.element([1, 1])
    assert v.is_unit()
    skew_side = C.apply_equivalence(u, v)
    mat_side = C.apply_equivalence(ctx.matrix(u), ctx.matrix(v), ctx=ctx)
    assert skew_side.same_space(mat_side)


def test_full_space_centraliser_is_scalars(small_ring):
    C = full_space_code(small_ring)
    inv = C.invariants()
    qs = small_ring.tower.q ** small_ring.F.degree
    assert inv.centraliser == qs
    sub = C.invariant_subalgebras()
    assert C.field_certificate(sub["centraliser"])


def test_gabidulin_nuclear_parameters():
    C = gabidulin_code()
    inv = C.invariants()
    assert inv.as_tuple() == (64, 8, 8, 2, 2)


def test_paired_family_nuclear_parameters():
    ring = make_ring(3, 2, 3)
    gam = scan_gammas(ring.tower, ring.F, 1)[0]
    C = build_D(DParams(ring.F, 1, gam))
    inv = C.invariants()
    assert inv.as_tuple() == (729, 3, 3, 27, 3)


def test_singleton_bound_never_violated():
    for (q, n, s, k) in [(2, 2, 2, 1), (2, 3, 1, 2), (3, 2, 2, 1), (2, 3, 2, 1)]:
        ring = make_ring(q, n, s)
        C = build_S(SParams(ring.F, k, ring.tower.zero("big"), 0))
        _, d, bound = C.is_mrd()
        assert C.cardinality <= bound


def test_normalization_and_invertible_codeword():
    ring = make_ring(3, 2, 2)
    from skewlab.families import scan_etas

    h, eta = scan_etas(ring.tower, ring.F, 1)[0]
    C = build_S(SParams(ring.F, 1, eta, h))
    assert not C.contains(ring.one())
    C1 = C.normalized_to_identity()
    assert C1.contains(ring.one())
    assert C1.cardinality == C.cardinality
    # idealiser sizes are equivalence invariants
    assert C.invariants().left_idealiser == C1.invariants().left_idealiser


def test_code_independence_check():
    ring = make_ring(2, 2, 2)
    one = ring.one()
    with pytest.raises(sl.SkewlabError):
        RankCode(ring, [one, one], k_dim=1)


def test_k_closure_check():
    ring = make_ring(3, 2, 2)
    # a single non-scalar generator is F_3-closed but not F_9-closed
    g = ring.x_class()
    RankCode(ring, [g], k_dim=1)
    with pytest.raises(sl.SkewlabError):
        RankCode(ring, [g], k_dim=2)
