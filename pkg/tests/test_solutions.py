"""Solution polynomials and the operators that must kill them."""

import pytest
from hypothesis import given, settings, strategies as st

from gkzmodp import (BoxOperator, GfPoly, Undecided, box_residual, build_F,
                     build_G, euler_residual, f_from_minimals,
                     relation_test_set, solution_basis)
from gkzmodp.corpus import AXES_AND_MIXED, KLOOSTERMAN, corpus_betas


def test_f_from_minimals_inverts_factorials():
    # 1/2! = 3 mod 5
    f = f_from_minimals(((2, 0),), 5, 2)
    assert f.terms == {(2, 0): 3}


def test_build_F_three_squares_p3():
    f = build_F(AXES_AND_MIXED, (1, 1, 0), 3, 10)
    assert f == GfPoly(3, 4, {(1, 1, 0, 0): 1, (0, 0, 1, 1): 1})


def test_build_F_three_squares_p5():
    f = build_F(AXES_AND_MIXED, (2, 2, 0), 5, 10)
    assert f == GfPoly(5, 4, {(2, 2, 0, 0): 4, (1, 1, 1, 1): 1, (0, 0, 2, 2): 4})


def test_build_F_rejects_bad_targets():
    # minimal representation (7, 0) has an entry beyond p - 1
    with pytest.raises(ValueError):
        build_F(KLOOSTERMAN, (7,), 5, 10)
    # a cap below the weight cannot even decide membership
    with pytest.raises(Undecided):
        build_F(KLOOSTERMAN, (7,), 5, 4)


def test_solution_basis_kloosterman():
    basis = solution_basis(KLOOSTERMAN, (2,), 5, 10)
    assert [(g, f.to_text()) for g, f in basis] == \
        [((-3,), "1*l2^3"), ((2,), "3*l1^2")]


def test_solution_basis_disjoint_supports():
    basis = solution_basis(AXES_AND_MIXED, (1, 1, 0), 3, 10)
    seen = set()
    for _, f in basis:
        for u in f.terms:
            assert u not in seen
            seen.add(u)


def test_euler_residual_detects_wrong_target():
    f = build_F(AXES_AND_MIXED, (1, 1, 0), 3, 10)
    assert all(r.is_zero() for r in euler_residual(AXES_AND_MIXED, (1, 1, 0), f))
    bad = euler_residual(AXES_AND_MIXED, (0, 1, 0), f)
    assert not all(r.is_zero() for r in bad)


def test_box_operator_branches():
    balanced = BoxOperator((1, 1, -1, -1))
    assert balanced.branch == "balanced"
    assert balanced.l_plus == (1, 1, 0, 0)
    assert balanced.l_minus == (0, 0, 1, 1)
    assert BoxOperator((1, 1)).branch == "positive-sum"
    assert BoxOperator((-1, -1)).branch == "negative-sum"


def test_normalized_box_annihilates_but_classical_does_not():
    # the Kloosterman system is confluent; normalization is what makes the
    # truncated solution a solution
    f = build_F(KLOOSTERMAN, (2,), 5, 10)
    l = (1, 1)
    assert box_residual(BoxOperator(l), f).is_zero()
    classical = box_residual(BoxOperator(l, kind="classical"), f)
    assert classical == -f


def test_classical_box_annihilates_nonconfluent_solutions():
    f = build_F(AXES_AND_MIXED, (2, 2, 0), 5, 10)
    op = BoxOperator((1, 1, -1, -1), kind="classical")
    assert box_residual(op, f).is_zero()


def test_relation_test_set_contents():
    ops = relation_test_set(KLOOSTERMAN, (2,), 5)
    vecs = [op.l for op in ops]
    assert set(vecs) == {(1, 1), (-1, -1), (2, 2), (-2, -2), (3, 3), (-3, -3)}
    norms = [sum(abs(x) for x in v) for v in vecs]
    assert norms == sorted(norms)


def test_build_G_equals_F_when_box_is_minimal():
    # every box element of (1,1,0) at p = 3 is already minimal
    assert build_G(AXES_AND_MIXED, (1, 1, 0), 3, 10) == \
        build_F(AXES_AND_MIXED, (1, 1, 0), 3, 10)


def test_build_G_requires_very_good():
    with pytest.raises(ValueError):
        build_G(KLOOSTERMAN, (2,), 5, 10)
    with pytest.raises(Undecided):
        build_G(KLOOSTERMAN, (2,), 5, 2)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(0, 3), st.integers(0, 3))
def test_all_bases_annihilated(p, i, j):
    beta = (i % p, j % p, (i + j) % p)
    for gamma, f in solution_basis(AXES_AND_MIXED, beta, p, 2 * p):
        for r in euler_residual(AXES_AND_MIXED, gamma, f):
            assert r.is_zero()
        for op in relation_test_set(AXES_AND_MIXED, gamma, p):
            assert box_residual(op, f).is_zero()
