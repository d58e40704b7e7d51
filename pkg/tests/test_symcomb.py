import math
import random

import pytest

from qwreath import symcomb as sc


def test_mul_applies_right_factor_first():
    # u*v sends i to u[v[i]]
    u = (1, 0, 2)
    v = (0, 2, 1)
    assert sc.mul(u, v) == (1, 2, 0)


def test_inverse_and_length():
    w = sc.from_one_line("|1 3 4 2|")
    assert w == (0, 2, 3, 1)
    assert sc.mul(w, sc.inverse(w)) == sc.identity(4)
    assert sc.length(w) == 2
    assert sc.inv_set((1, 2, 0)) == {(0, 2), (1, 2)}


def test_one_line_roundtrip():
    for w in sc.all_perms(4):
        assert sc.from_one_line(sc.to_one_line(w)) == w


def test_reduced_word_rebuilds():
    for d in (2, 3, 4):
        for w in sc.all_perms(d):
            word = sc.reduced_word(w)
            assert len(word) == sc.length(w)
            assert sc.from_word(d, word) == w


def test_simple_reflection_sides():
    # right multiplication swaps positions, left multiplication swaps values
    w = (2, 0, 3, 1)
    s1 = sc.simple(4, 1)
    assert sc.mul(w, s1) == (2, 3, 0, 1)
    assert sc.mul(s1, w) == (1, 0, 3, 2)


def test_g_for_spec_matrix():
    A = sc.ThetaMatrix([[1, 1], [2, 0]])
    lam, g, mu, delta_c, delta_r, w0A = sc.double_coset_data(A)
    assert lam == (2, 2)
    assert mu == (3, 1)
    assert g == sc.from_one_line("|1 3 4 2|")
    assert delta_c == (1, 2, 1)
    assert delta_r == (1, 1, 2)
    expected_w0A = sc.from_word(4, [0, 2, 1, 2, 0, 1])
    assert w0A == expected_w0A
    # the trailing factor w0^delta * w0^mu is a shortest coset representative
    assert sc.length(w0A) == sc.length(sc.longest_in_young(lam)) + sc.length(g) \
        + sc.length(sc.longest_in_young(mu)) - sc.length(sc.longest_in_young(delta_c))


def test_matrix_perm_roundtrip():
    for A in sc.theta_matrices(2, 4):
        lam, g, mu = A.lam, sc.matrix_to_perm(A), A.mu
        assert sc.matrix_from_triple(lam, g, mu) == A
        assert sc.increasing_on_blocks(g, mu)
        assert sc.increasing_on_blocks(sc.inverse(g), lam)


def test_double_coset_reps_match_matrices():
    for lam in sc.compositions(4):
        for mu in sc.compositions(4):
            reps = set(sc.double_coset_reps(lam, mu))
            mats = {sc.matrix_to_perm(A) for A in sc.theta_matrices(max(len(lam), len(mu)), 4)
                    if A.lam == lam + (0,) * (max(len(lam), len(mu)) - len(lam))
                    and A.mu == mu + (0,) * (max(len(lam), len(mu)) - len(mu))}
            assert reps == mats


def test_conjugation_identities():
    # S_{delta_c} = g^{-1} S_lam g & S_mu and S_{delta_r} = g S_mu g^{-1} & S_lam
    for d in (2, 3, 4):
        for lam in sc.compositions(d):
            for mu in sc.compositions(d):
                for g in sc.double_coset_reps(lam, mu):
                    A = sc.matrix_from_triple(lam, g, mu)
                    _, _, _, delta_c, delta_r, _ = sc.double_coset_data(A)
                    gi = sc.inverse(g)
                    conj_c = {sc.mul_many(gi, x, g) for x in sc.young_subgroup(lam)}
                    assert set(sc.young_subgroup(delta_c)) == conj_c & set(sc.young_subgroup(mu))
                    conj_r = {sc.mul_many(g, y, gi) for y in sc.young_subgroup(mu)}
                    assert set(sc.young_subgroup(delta_r)) == conj_r & set(sc.young_subgroup(lam))


def test_kappa_counts_and_lengths():
    lam, mu = (2, 2), (3, 1)
    g = sc.from_one_line("|1 3 4 2|")
    kappa = sc.bijection_kappa(lam, g, mu)
    assert len(kappa) == 4 * 3
    coset = {sc.mul_many(x, g, y) for x in sc.young_subgroup(lam)
             for y in sc.young_subgroup(mu)}
    assert set(kappa.values()) == coset


def test_kappa_raises_off_minimal_g():
    lam = mu = (2,)
    with pytest.raises(sc.LengthAdditivityViolation):
        sc.bijection_kappa(lam, sc.simple(2, 0), mu)


def test_decompose_double_coset():
    rng = random.Random(7)
    for d in (3, 4):
        perms = list(sc.all_perms(d))
        for lam in sc.compositions(d):
            for mu in sc.compositions(d):
                for z in rng.sample(perms, 6):
                    x, g0, y = sc.double_coset_decompose(z, lam, mu)
                    assert z == sc.mul_many(x, g0, y)
                    assert x in sc.young_subgroup(lam)
                    assert y in sc.young_subgroup(mu)
                    assert g0 in sc.double_coset_reps(lam, mu)


def test_coset_reps_counts():
    for d in (3, 4):
        for lam in sc.compositions(d):
            expect = math.factorial(d)
            for p in lam:
                expect //= math.factorial(p)
            assert len(sc.coset_reps(lam, "right")) == expect
            assert len(sc.coset_reps(lam, "left")) == expect


def test_inv_set_growth():
    # appending an ascent letter adds exactly the new pair after twisting
    for d in (3, 4):
        for u in sc.all_perms(d):
            for i in range(d - 1):
                if u[i] < u[i + 1]:
                    w = sc.mul(u, sc.simple(d, i))
                    s = sc.simple(d, i)
                    twisted = {tuple(sorted((s[a], s[b]))) for a, b in sc.inv_set(u)}
                    assert sc.inv_set(w) == twisted | {(i, i + 1)}


def test_regions_partition():
    lam = (2, 1)
    assert sc.region_N(lam) == {(0, 2), (1, 2)}
    assert sc.region_L(lam) == {(0, 1)}
    assert sc.region_P(lam) == {(1, 0), (2, 0), (2, 1), (0, 1)}
    for d in (2, 3, 4):
        for lam in sc.compositions(d):
            n, l = sc.region_N(lam), sc.region_L(lam)
            assert n | l == {(i, j) for i in range(d) for j in range(i + 1, d)}
            assert not (n & l)
            assert len(sc.region_P(lam)) == d * (d - 1) - len(n)


def test_refines():
    assert sc.refines((1, 1, 2), (2, 2))
    assert sc.refines((2, 2), (4,))
    assert not sc.refines((1, 2, 1), (2, 2))
    with pytest.raises(sc.NotARefinement):
        sc.check_refines((1, 2, 1), (2, 2))


def test_weak_compositions_count():
    assert len(sc.weak_compositions(3, 9)) == 165
    assert len(sc.theta_matrices(3, 3)) == 165
