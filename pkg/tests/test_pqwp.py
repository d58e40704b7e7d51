import json
import math
import random

import pytest

from qwreath.base_algebra import FTensor, preset, shipped_presets
from qwreath.pqwp import (
    FormulaMismatch, IdentityFailed, ParamMismatch, PqwpElement, alpha_family,
    decompose_k, eigenvector_check, from_right_coefficients, k_lambda,
    m_lambda, mackey_expansion, multinomial, pqwp_mul, right_coefficient_form,
)
from qwreath.symcomb import (
    NotARefinement, all_perms, compositions, double_coset_reps, from_word,
    identity, inverse, length, longest_element, mul, reduced_word, simple,
)
from qwreath.tensor_poly import (
    abar_ij, alpha_ij, of_ftensor, r_ij, s_ij, unit_poly, x_var, zero_poly,
)

WORKING = tuple(n for n in shipped_presets() if n != "rees")


def scaled_unit(params, d, c):
    return unit_poly(params, d).scale(c)


@pytest.mark.parametrize("name", WORKING)
def test_quadratic_relation(name):
    """H_i^2 lands back in the span of H_i and 1 with the S and R weights."""
    p = preset(name)
    for d, i in ((2, 0), (3, 1)):
        lhs = PqwpElement.of_word(p, d, (i, i))
        rhs = (PqwpElement.h_gen(p, d, i).poly_left(s_ij(p, d, i, i + 1))
               + PqwpElement.of_poly(r_ij(p, d, i, i + 1)))
        assert lhs == rhs


@pytest.mark.parametrize("name", WORKING)
def test_braid_relation(name):
    p = preset(name)
    assert (PqwpElement.of_word(p, 3, (0, 1, 0))
            == PqwpElement.of_word(p, 3, (1, 0, 1)))
    assert (PqwpElement.of_word(p, 4, (1, 2, 1))
            == PqwpElement.of_word(p, 4, (2, 1, 2)))


@pytest.mark.parametrize("name", WORKING)
def test_distant_generators_commute(name):
    p = preset(name)
    h0 = PqwpElement.h_gen(p, 4, 0)
    h2 = PqwpElement.h_gen(p, 4, 2)
    assert pqwp_mul(h0, h2) == pqwp_mul(h2, h0)
    x3 = x_var(p, 4, 3)
    assert pqwp_mul(h0, PqwpElement.of_poly(x3)) == h0.poly_left(x3)


def test_distant_base_slot_commutes_noncommutative_base():
    p = preset("zigzag_a1")
    k = p.algebra.dim - 1
    c = of_ftensor(p, 3, FTensor.basis(p.algebra, (0, 0, k)))
    h0 = PqwpElement.h_gen(p, 3, 0)
    assert pqwp_mul(h0, PqwpElement.of_poly(c)) == h0.poly_left(c)


def test_push_through_frozen_examples():
    """H_1 x_1 = x_2 H_1 + rho(x_1) with the preset-specific rho."""
    deg = preset("degenerate")
    x1, x2 = x_var(deg, 2, 0), x_var(deg, 2, 1)
    lhs = pqwp_mul(PqwpElement.h_gen(deg, 2, 0), PqwpElement.of_poly(x1))
    assert lhs == (PqwpElement.h_gen(deg, 2, 0).poly_left(x2)
                   + PqwpElement.one(deg, 2))
    aff = preset("affine_hecke")
    q = aff.field.param("q")
    x1, x2 = x_var(aff, 2, 0), x_var(aff, 2, 1)
    lhs = pqwp_mul(PqwpElement.h_gen(aff, 2, 0), PqwpElement.of_poly(x1))
    rhs = (PqwpElement.h_gen(aff, 2, 0).poly_left(x2)
           + PqwpElement.of_poly(x1.scale(q - aff.field.one())))
    assert lhs == rhs


def test_mixed_params_rejected():
    a = preset("affine_hecke")
    b = preset("qt_hecke")
    with pytest.raises(ParamMismatch):
        PqwpElement.h_gen(a, 2, 0) + PqwpElement.h_gen(b, 2, 0)
    with pytest.raises(ValueError):
        PqwpElement.h_gen(a, 3, 2)


def test_word_constructor_normalizes():
    """Non-reduced words, empty words, and reduced spellings all agree."""
    p = preset("pro_p")
    assert PqwpElement.of_word(p, 3, ()) == PqwpElement.one(p, 3)
    for w in all_perms(3):
        assert (PqwpElement.of_word(p, 3, reduced_word(w))
                == PqwpElement.h_of_perm(p, 3, w))
    s1s1s1 = PqwpElement.of_word(p, 3, (0, 0, 0))
    h = PqwpElement.h_gen(p, 3, 0)
    assert s1s1s1 == pqwp_mul(pqwp_mul(h, h), h)


@pytest.mark.parametrize("name", ("affine_hecke", "qt_hecke", "pro_p", "zigzag_a1"))
def test_associativity_random_triples(name):
    p = preset(name)
    d = 3
    pool = [PqwpElement.h_gen(p, d, i) for i in range(d - 1)]
    pool.append(PqwpElement.of_poly(x_var(p, d, 0)))
    pool.append(PqwpElement.of_poly(x_var(p, d, 2)))
    rng = random.Random(20260819)
    for _ in range(5):
        a, b, c = (rng.choice(pool) + rng.choice(pool) for _ in range(3))
        assert pqwp_mul(pqwp_mul(a, b), c) == pqwp_mul(a, pqwp_mul(b, c))


@pytest.mark.parametrize("name", WORKING)
def test_generator_commutes_with_its_own_weights(name):
    p = preset(name)
    for i in (0, 1):
        h = PqwpElement.h_gen(p, 3, i)
        for c in (s_ij(p, 3, i, i + 1), r_ij(p, 3, i, i + 1)):
            assert pqwp_mul(h, PqwpElement.of_poly(c)) == h.poly_left(c)


def test_alpha_family_identity_and_scalar_powers():
    p = preset("qt_hecke")
    q = p.field.param("q")
    assert alpha_family(p, 3, identity(3)) == unit_poly(p, 3)
    for w in all_perms(3):
        expect = scaled_unit(p, 3, q ** length(w))
        assert alpha_family(p, 3, w) == expect
        assert alpha_family(p, 3, w, "alpha_star") == alpha_family(p, 3, inverse(w))


def test_alpha_family_nonscalar_dual_route():
    """The inversion-set product must survive the reduced-word cross-check
    even when alpha has genuinely different values on different leg pairs."""
    p = preset("pro_p")
    for w in all_perms(3):
        alpha_family(p, 3, w)
        alpha_family(p, 3, w, "abar")
        alpha_family(p, 3, w, "alpha_star")
    w0 = longest_element(3)
    prod = alpha_ij(p, 3, 0, 1) * alpha_ij(p, 3, 0, 2) * alpha_ij(p, 3, 1, 2)
    assert alpha_family(p, 3, w0) == prod


@pytest.mark.parametrize("name", ("affine_hecke", "qt_hecke", "pro_p"))
def test_full_k3_frozen_expansion(name):
    p = preset(name)
    k = k_lambda(p, 3, (3,))
    a01 = alpha_ij(p, 3, 0, 1)
    a02 = alpha_ij(p, 3, 0, 2)
    a12 = alpha_ij(p, 3, 1, 2)
    expected = {
        (2, 1, 0): unit_poly(p, 3),
        (2, 0, 1): a01,
        (1, 2, 0): a12,
        (0, 2, 1): a01 * a02,
        (1, 0, 2): a02 * a12,
        (0, 1, 2): a01 * a02 * a12,
    }
    assert set(k.support()) == set(expected)
    for w, c in expected.items():
        assert k.coefficient(w) == c


@pytest.mark.parametrize("name", ("qt_hecke", "pro_p"))
def test_partial_k_frozen_coefficients(name):
    p = preset(name)
    s2 = simple(3, 1)
    upper = k_lambda(p, 3, (3,), "upper", (2, 1))
    assert set(upper.support()) == {identity(3), s2, (2, 0, 1)}
    assert upper.coefficient((2, 0, 1)) == unit_poly(p, 3)
    assert upper.coefficient(s2) == alpha_ij(p, 3, 0, 2)
    assert upper.coefficient(identity(3)) == alpha_ij(p, 3, 0, 2) * alpha_ij(p, 3, 1, 2)
    tilde = k_lambda(p, 3, (3,), "tilde", (2, 1))
    assert set(tilde.support()) == {identity(3), s2, (1, 2, 0)}
    assert tilde.coefficient((1, 2, 0)) == unit_poly(p, 3)
    assert tilde.coefficient(s2) == alpha_ij(p, 3, 0, 1)
    assert tilde.coefficient(identity(3)) == alpha_ij(p, 3, 0, 2) * alpha_ij(p, 3, 1, 2)


@pytest.mark.parametrize("name", ("affine_hecke", "qt_hecke", "pro_p", "zigzag_a1"))
@pytest.mark.parametrize("lam,nu", [
    ((3,), (2, 1)),
    ((3,), (1, 2)),
    ((3,), (1, 1, 1)),
    ((2, 1), (1, 1, 1)),
    ((1, 2), (1, 2)),
])
def test_one_sided_factorizations(name, lam, nu):
    """K_lam splits off a full K of any refinement on either side."""
    p = preset(name)
    d = sum(lam)
    full = k_lambda(p, d, lam)
    assert pqwp_mul(k_lambda(p, d, lam, "tilde", nu), k_lambda(p, d, nu)) == full
    assert pqwp_mul(k_lambda(p, d, nu), k_lambda(p, d, lam, "upper", nu)) == full


def test_partial_k_argument_errors():
    p = preset("affine_hecke")
    with pytest.raises(ValueError):
        k_lambda(p, 3, (2, 2))
    with pytest.raises(ValueError):
        k_lambda(p, 3, (3,), "upper")
    with pytest.raises(NotARefinement):
        k_lambda(p, 3, (1, 2), "upper", (2, 1))
    with pytest.raises(ValueError):
        k_lambda(p, 3, (3,), "sideways", (2, 1))


@pytest.mark.parametrize("name", WORKING)
def test_k_eigenvector_property(name):
    p = preset(name)
    extra = (PqwpElement.h_gen(p, 3, 0) + PqwpElement.of_poly(x_var(p, 3, 1)),)
    for lam in ((3,), (2, 1), (1, 2)):
        eigenvector_check(p, 3, lam, extra_left=extra)


@pytest.mark.parametrize("name", ("affine_hecke", "qt_hecke", "pro_p",
                                  "degenerate", "zigzag_a1"))
def test_k_squared_is_m_times_k(name):
    p = preset(name)
    for d in (2, 3):
        for lam in compositions(d):
            k = k_lambda(p, d, lam)
            assert pqwp_mul(k, k) == k.poly_left(m_lambda(p, d, lam))


def test_k_squared_d4():
    p = preset("affine_hecke")
    for lam in ((4,), (2, 2), (1, 3)):
        k = k_lambda(p, 4, lam)
        assert pqwp_mul(k, k) == k.poly_left(m_lambda(p, 4, lam))


def test_m_closed_forms():
    """The symmetric eigen-scalar collapses to factorials and their q and
    (q,t) analogues in the classical presets, to 1 when R=0 and S=-1, and
    to 0 in the nil presets as soon as a block has two strands."""
    deg = preset("degenerate")
    for d in (2, 3, 4):
        for lam in compositions(d):
            expect = deg.field.from_int(math.prod(math.factorial(a) for a in lam))
            assert m_lambda(deg, d, lam) == scaled_unit(deg, d, expect)
    aff = preset("affine_hecke")
    q = aff.field.param("q")
    one = aff.field.one()

    def q_int(n):
        total = aff.field.zero()
        for j in range(n):
            total = total + q ** j
        return total

    for d in (2, 3, 4):
        for lam in compositions(d):
            expect = one
            for a in lam:
                for n in range(1, a + 1):
                    expect = expect * q_int(n)
            assert m_lambda(aff, d, lam) == scaled_unit(aff, d, expect)
    zh = preset("zero_hecke")
    for lam in ((3,), (2, 1), (1, 1, 1)):
        assert m_lambda(zh, 3, lam) == unit_poly(zh, 3)
    for name in ("nil", "opposite_nil"):
        p = preset(name)
        assert m_lambda(p, 3, (2, 1)) == zero_poly(p, 3)
        assert m_lambda(p, 3, (3,)) == zero_poly(p, 3)
        assert m_lambda(p, 3, (1, 1, 1)) == unit_poly(p, 3)


def test_m_qt_frozen():
    p = preset("qt_hecke")
    q, t = p.field.param("q"), p.field.param("t")
    assert m_lambda(p, 2, (2,)) == scaled_unit(p, 2, q + t)
    cubic = q ** 3 + 2 * (q * q * t) + 2 * (q * t * t) + t ** 3
    assert m_lambda(p, 3, (3,)) == scaled_unit(p, 3, cubic)


def test_multinomial_frozen_and_symmetry_failure():
    qt = preset("qt_hecke")
    q, t = qt.field.param("q"), qt.field.param("t")
    expect = scaled_unit(qt, 3, q * q + q * t + t * t)
    assert multinomial(qt, 3, (1, 2)) == expect
    assert multinomial(qt, 3, (2, 1)) == expect
    pp = preset("pro_p")
    assert multinomial(pp, 3, (1, 2)) != multinomial(pp, 3, (2, 1))
    for name in WORKING:
        p = preset(name)
        assert multinomial(p, 3, (3,)) == unit_poly(p, 3)


@pytest.mark.parametrize("d", (2, 3, 4, 5))
def test_binomial_matches_subset_oracle(d):
    """Two-block multinomials agree with a direct sum over landing sets:
    each k-subset I of positions contributes q per increasing cross pair
    and t per decreasing one."""
    import itertools
    p = preset("qt_hecke")
    q, t = p.field.param("q"), p.field.param("t")
    for k in range(d + 1):
        total = p.field.zero()
        for subset in itertools.combinations(range(d), k):
            inside = set(subset)
            term = p.field.one()
            for a in inside:
                for b in range(d):
                    if b in inside:
                        continue
                    term = term * (q if a < b else t)
            total = total + term
        lam = tuple(x for x in (k, d - k) if x)
        assert multinomial(p, d, lam) == scaled_unit(p, d, total)


@pytest.mark.parametrize("name", ("affine_hecke", "qt_hecke", "pro_p"))
def test_m_of_full_block_is_finest_multinomial(name):
    p = preset(name)
    for d in (2, 3):
        assert m_lambda(p, d, (d,)) == multinomial(p, d, (1,) * d)


@pytest.mark.parametrize("name", WORKING)
def test_double_coset_expansion_d2(name):
    p = preset(name)
    for lam in compositions(2):
        for mu in compositions(2):
            mackey_expansion(p, 2, lam, mu)


@pytest.mark.parametrize("name", ("affine_hecke", "pro_p", "zigzag_a1"))
def test_double_coset_expansion_d3(name):
    p = preset(name)
    for lam in compositions(3):
        for mu in compositions(3):
            mackey_expansion(p, 3, lam, mu)


def test_double_coset_expansion_d4_spot():
    aff = preset("affine_hecke")
    mackey_expansion(aff, 4, (2, 2), (2, 2))
    mackey_expansion(aff, 4, (2, 1, 1), (1, 3))
    mackey_expansion(aff, 4, (4,), (2, 2))
    mackey_expansion(preset("pro_p"), 4, (2, 2), (2, 2))


def test_double_coset_expansion_rejects_bad_sums():
    p = preset("affine_hecke")
    with pytest.raises(ValueError):
        mackey_expansion(p, 3, (2, 2), (3,))


@pytest.mark.parametrize("name", ("affine_hecke", "qt_hecke", "pro_p"))
def test_decompose_k_over_double_cosets(name):
    p = preset(name)
    for lam in ((2, 1), (1, 2), (3,)):
        for mu in ((1, 2), (2, 1), (1, 1, 1)):
            for g in double_coset_reps(lam, mu):
                out = decompose_k(p, 3, lam, g, mu)
                assert sum(out["nu"]) == 3
                assert sum(out["delta"]) == 3
                assert out["k_lam"] == k_lambda(p, 3, lam)


def test_decompose_k_trivial_blocks():
    p = preset("pro_p")
    out = decompose_k(p, 3, (1, 1, 1), identity(3), (3,))
    assert out["nu"] == (1, 1, 1)
    assert out["k_mu"] == k_lambda(p, 3, (3,))


@pytest.mark.parametrize("name", ("affine_hecke", "pro_p", "qt_hecke"))
def test_right_coefficient_roundtrip(name):
    p = preset(name)
    rng = random.Random(99)
    for _ in range(4):
        elt = PqwpElement.zero(p, 3)
        for w in all_perms(3):
            if rng.random() < 0.6:
                c = x_var(p, 3, rng.randrange(3)) if rng.random() < 0.5 \
                    else unit_poly(p, 3)
                elt = elt + PqwpElement.h_of_perm(p, 3, w).poly_left(c)
        rights = right_coefficient_form(elt)
        assert from_right_coefficients(p, 3, rights) == elt


def test_right_coefficient_form_of_full_k():
    """In right form each coefficient of the full K element is the left
    one pulled through H_w, which relabels the tensor legs by w inverse."""
    p = preset("pro_p")
    k = k_lambda(p, 3, (3,))
    w0 = longest_element(3)
    rights = right_coefficient_form(k)
    assert set(rights) == set(k.support())
    for w, c in rights.items():
        left = alpha_family(p, 3, mul(w0, inverse(w)))
        assert c == left.place_permute(inverse(w))


def test_rendering_frozen():
    p = preset("qt_hecke")
    assert str(PqwpElement.zero(p, 2)) == "0"
    assert str(PqwpElement.h_gen(p, 2, 0)) == "H[1]"
    assert str(k_lambda(p, 2, (2,))) == "H[1] + q*(1⊗1)"
    mixed = PqwpElement.h_gen(p, 2, 0) + PqwpElement.of_poly(x_var(p, 2, 0))
    assert str(mixed) == "H[1] + (1⊗1)*x1"
    assert str(k_lambda(p, 3, (3,), "upper", (2, 1))) \
        == "H[2,1] + q*(1⊗1⊗1)*H[2] + q^2*(1⊗1⊗1)"


def test_json_round_structure():
    p = preset("qt_hecke")
    blob = json.loads(k_lambda(p, 2, (2,)).to_json())
    assert blob["d"] == 2
    assert [row["word"] for row in blob["terms"]] == [[], [1]]
    assert blob["terms"][1]["one_line"] == "|2 1|"
    assert all("coeff" in row for row in blob["terms"])


def test_support_order_and_scale():
    p = preset("affine_hecke")
    k = k_lambda(p, 3, (3,))
    lengths = [length(w) for w in k.support()]
    assert lengths == sorted(lengths)
    two = p.field.from_int(2)
    assert k.scale(two) - k == k
    assert (k - k).is_zero()
