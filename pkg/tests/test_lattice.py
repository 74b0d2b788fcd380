"""Semigroup membership, weights, minimal representations, goodness."""

import pytest
from hypothesis import given, settings, strategies as st

from gkzmodp import (ASet, BudgetExceeded, Undecided, classify_goodness,
                     default_weight_cap, enumerate_box, nonconfluence_form,
                     relation_kernel_basis, semigroup_member, sigma_tau,
                     weight_and_minimals)
from gkzmodp.corpus import (AXES_AND_MIXED, KLOOSTERMAN, UNDECIDED_STRIP,
                            random_asets)

DOUBLED = ASet(((2,),))


def test_aset_validation():
    with pytest.raises(ValueError):
        ASet(())
    with pytest.raises(ValueError):
        ASet(((1, 0), (1,)))
    a = KLOOSTERMAN
    assert a.n == 1 and a.N == 2


def test_nonconfluence_form():
    assert nonconfluence_form(AXES_AND_MIXED) == (1, 1, 1)
    assert nonconfluence_form(KLOOSTERMAN) is None
    assert nonconfluence_form(ASet(((1, 0), (0, 1)))) == (1, 1)


def test_pointedness():
    h = AXES_AND_MIXED.pointedness
    assert h is not None
    assert all(sum(f * x for f, x in zip(h, a)) >= 1
               for a in AXES_AND_MIXED.vectors)
    assert KLOOSTERMAN.pointedness is None
    assert UNDECIDED_STRIP.pointedness is None
    # pointed without a nonconfluence form
    skew = ASet(((1, 0), (0, 1), (2, 1)))
    assert nonconfluence_form(skew) is None
    assert skew.pointedness is not None


def test_semigroup_member_witness():
    witness = semigroup_member(AXES_AND_MIXED, (1, 1, 0), 10)
    assert witness is not None
    img = tuple(sum(witness[i] * AXES_AND_MIXED.vectors[i][c] for i in range(4))
                for c in range(3))
    assert img == (1, 1, 0)
    assert semigroup_member(DOUBLED, (3,), 50) is None


def test_weight_and_minimals_three_squares():
    # the class of ((p-1)/2, (p-1)/2, 0) at p = 5
    wr = weight_and_minimals(AXES_AND_MIXED, (2, 2, 0), 20)
    assert wr.status == "found"
    assert wr.weight == 4
    assert wr.minimals == ((0, 0, 2, 2), (1, 1, 1, 1), (2, 2, 0, 0))


def test_weight_decided_absence_for_pointed_set():
    # 3 is not a sum of 2s; the pointed decision cap settles it
    wr = weight_and_minimals(DOUBLED, (3,), 50)
    assert wr.status == "not-found-up-to-cap"
    assert wr.decided


def test_weight_undecided_for_nonpointed_set():
    wr = weight_and_minimals(ASet(((2,), (-2,))), (1,), 8)
    assert wr.status == "not-found-up-to-cap"
    assert not wr.decided


def test_enumerate_box_balanced_pairs():
    box = enumerate_box(KLOOSTERMAN, (0,), 8)
    assert box == tuple((u, u) for u in range(9))


def test_classify_goodness_good_and_very_good():
    rep = classify_goodness(DOUBLED, (4,), 3, 20)
    assert rep.good and rep.very_good is True
    assert rep.report.minimals == ((2,),)


def test_classify_goodness_rejects_nonmembers():
    with pytest.raises(ValueError):
        classify_goodness(DOUBLED, (3,), 3, 50)


def test_classify_goodness_undecided_membership():
    with pytest.raises(Undecided):
        classify_goodness(ASet(((2,), (-2,))), (1,), 3, 8)


def test_very_good_depends_on_cap_for_nonpointed_sets():
    # gamma - p a_3 = (0, 1-p) can never be reached; the line tests decide
    # False only once the cap admits their absorptions
    narrow = classify_goodness(UNDECIDED_STRIP, (0, 1), 3, 2)
    assert narrow.good and narrow.very_good is None
    wide = classify_goodness(UNDECIDED_STRIP, (0, 1), 3, 10)
    assert wide.good and wide.very_good is False


def test_sigma_tau_kloosterman():
    cat = sigma_tau(KLOOSTERMAN, (2,), 5, 10)
    assert cat.residue_class == (2,)
    gammas = tuple(g for g, _ in cat.sigma)
    assert gammas == ((-3,), (2,))
    by_gamma = dict(cat.sigma)
    assert by_gamma[(-3,)].weight == 3
    assert by_gamma[(-3,)].minimals == ((0, 3),)
    assert by_gamma[(2,)].minimals == ((2, 0),)
    assert cat.tau == ()
    assert cat.undecided == ()


def test_sigma_tau_undecided_with_narrow_cap():
    cat = sigma_tau(KLOOSTERMAN, (2,), 5, 2)
    assert (2,) in cat.undecided


def test_sigma_tau_doubled_generator():
    # beta = 1 mod 3: the only good target is 4 = 2 + 2, and it is very good
    cat = sigma_tau(DOUBLED, (1,), 3, 20)
    assert tuple(g for g, _ in cat.sigma) == ((4,),)
    assert dict(cat.sigma)[(4,)].minimals == ((2,),)
    assert cat.tau == ((4,),)


def test_relation_kernel_bases():
    assert relation_kernel_basis(KLOOSTERMAN).basis == ((1, 1),)
    assert relation_kernel_basis(AXES_AND_MIXED).basis == ((1, 1, -1, -1),)
    assert relation_kernel_basis(ASet(((1, 0), (0, 1)))).basis == ()


def test_reach_budget_guard(monkeypatch):
    import gkzmodp.lattice as lattice
    monkeypatch.setattr(lattice, "MAX_REACH_POINTS", 500)
    wide = ASet(((1, 0), (-1, 0), (0, 1), (0, -1)))
    with pytest.raises(BudgetExceeded):
        weight_and_minimals(wide, (100, 100), 500)


def test_default_weight_cap():
    assert default_weight_cap(KLOOSTERMAN, 5) == 4 * 1 * 2 * 4
    assert default_weight_cap(KLOOSTERMAN, 3, a=2) == 4 * 2 * 2 * 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_minimals_reconstruct_target(c1, c2, c3):
    beta = (c1 + c3, c2 + c3, 0)
    wr = weight_and_minimals(AXES_AND_MIXED, beta, 30)
    assert wr.status == "found"
    assert wr.weight <= c1 + c2 + 2 * c3
    for u in wr.minimals:
        assert sum(u) == wr.weight
        img = tuple(sum(u[i] * AXES_AND_MIXED.vectors[i][c] for i in range(4))
                    for c in range(3))
        assert img == beta


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(random_asets()), st.integers(0, 2), st.integers(0, 2))
def test_box_elements_map_to_gamma(aset, c1, c2):
    gamma = tuple(c1 * aset.vectors[0][k] + c2 * aset.vectors[1][k]
                  for k in range(aset.n))
    for u in enumerate_box(aset, gamma, 4):
        assert all(0 <= x <= 4 for x in u)
        img = tuple(sum(u[i] * aset.vectors[i][k] for i in range(aset.N))
                    for k in range(aset.n))
        assert img == gamma
