"""Digit decompositions, congruence families, and p-weights."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gkzmodp import (ASet, MSpec, digits, enumerate_U_M, gamma_sequences,
                     pweight_of, weight_and_minimals, wp_min)
from gkzmodp.corpus import KLOOSTERMAN, LINE_WITH_CONSTANT, MIXED_PLANE


def test_digit_decomposition():
    dec = digits(KLOOSTERMAN, (7, 5), 3, 2)
    assert dec.digits == ((1, 2), (2, 1))
    assert dec.gammas == ((-1,), (1,))
    assert dec.pweight == 6
    assert dec.digit_sum_per_entry == (3, 3)
    assert pweight_of((7, 5), 3) == 6


def test_digits_validate_range():
    with pytest.raises(ValueError):
        digits(KLOOSTERMAN, (9, 0), 3, 2)
    with pytest.raises(ValueError):
        digits(KLOOSTERMAN, (1,), 3, 2)


def test_enumerate_U_M_kloosterman_q5():
    U = enumerate_U_M(KLOOSTERMAN, MSpec("toric", (2,), 5, 1))
    assert U == ((0, 2), (1, 3), (2, 0), (2, 4), (3, 1), (4, 2))
    w, mins = wp_min(U, 5)
    assert w == 2
    assert mins == ((0, 2), (2, 0))


def test_enumerate_U_M_kloosterman_q9():
    U = enumerate_U_M(KLOOSTERMAN, MSpec("toric", (0,), 3, 2))
    expected = sorted({(u, u) for u in range(9)} | {(8, 0), (0, 8)})
    assert U == tuple(expected)


def test_enumerate_U_M_empty_family():
    # 3u is never 1 mod 3
    U = enumerate_U_M(ASet(((3,),)), MSpec("toric", (1,), 2, 2))
    assert U == ()


def test_enumerate_U_M_degenerate_modulus():
    # q = 2 makes q-1 = 1, so every exponent qualifies
    U = enumerate_U_M(KLOOSTERMAN, MSpec("toric", (0,), 2, 1))
    assert U == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_enumerate_U_M_affine_layers_partition_members():
    e = (0, 0)
    total = set()
    for layer in range(3):
        spec = MSpec("affine-layer", e, 3, 1, m=0, layer=layer)
        part = enumerate_U_M(MIXED_PLANE, spec)
        for u in part:
            img = tuple(sum(u[i] * MIXED_PLANE.vectors[i][c] for i in range(3))
                        for c in range(2))
            nz = sum(1 for x in img if x != 0)
            assert nz == layer
            assert all(x % 2 == 0 for x in img)
        assert not total & set(part)
        total |= set(part)


def test_wp_min_empty_input():
    with pytest.raises(ValueError):
        wp_min((), 3)


def test_gamma_sequences_q25():
    spec = MSpec("toric", (3,), 5, 2)
    U = enumerate_U_M(KLOOSTERMAN, spec)
    w, mins = wp_min(U, 5)
    assert w == 3
    assert mins == ((3, 0), (5, 2))
    seqs = gamma_sequences(KLOOSTERMAN, mins, 5, 2, 40)
    assert [s.gammas for s in seqs] == [((-2,), (1,)), ((3,), (0,))]
    by_gammas = {s.gammas: s for s in seqs}
    assert by_gammas[((3,), (0,))].member_class == ((3, 0),)
    assert by_gammas[((-2,), (1,))].member_class == ((5, 2),)
    assert by_gammas[((-2,), (1,))].minimals_per_k == (((0, 2),), ((1, 0),))


def test_gamma_sequences_partition_q9():
    spec = MSpec("toric", (1,), 3, 2)
    U = enumerate_U_M(KLOOSTERMAN, spec)
    w, mins = wp_min(U, 3)
    seqs = gamma_sequences(KLOOSTERMAN, mins, 3, 2, 24)
    covered = sorted(u for s in seqs for u in s.member_class)
    assert covered == sorted(mins)
    for s in seqs:
        assert sum(sum(s.minimals_per_k[k][0]) for k in range(2)) == w


def test_naive_U_M_agreement_line_with_constant():
    # brute force both layers of the affine family
    p = 3
    for layer in (0, 1):
        spec = MSpec("affine-layer", (0,), p, 1, m=0, layer=layer)
        U = enumerate_U_M(LINE_WITH_CONSTANT, spec)
        brute = []
        for u in itertools.product(range(p), repeat=2):
            img = u[0]
            if img % (p - 1) != 0:
                continue
            if (1 if img != 0 else 0) != layer:
                continue
            brute.append(u)
        assert U == tuple(sorted(brute))


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.sampled_from([3, 5]),
       st.sampled_from([1, 2]))
def test_digit_round_trip(x, y, p, a):
    q = p ** a
    u = (x % q, y % q)
    dec = digits(KLOOSTERMAN, u, p, a)
    rebuilt = tuple(sum(dec.digits[k][i] * p ** k for k in range(a))
                    for i in range(2))
    assert rebuilt == u
    assert dec.pweight == pweight_of(u, p)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8))
def test_pweight_dominates_digit_target_weights(x, y):
    # w_p(u) >= sum_k w(gamma_k), with equality iff every digit row is minimal
    p, a = 3, 2
    dec = digits(KLOOSTERMAN, (x, y), p, a)
    total = 0
    all_minimal = True
    for k in range(a):
        wr = weight_and_minimals(KLOOSTERMAN, dec.gammas[k],
                                 max(sum(dec.digits[k]), 1))
        assert wr.status == "found"
        total += wr.weight
        if dec.digits[k] not in wr.minimals:
            all_minimal = False
    assert dec.pweight >= total
    assert (dec.pweight == total) == all_minimal
