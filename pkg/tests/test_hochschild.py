import random
from fractions import Fraction

import pytest

from cartancalc.calculus import check_all, check_pre_cartan, hochschild_wiring
from cartancalc.derivations import Derivation, derivation
from cartancalc.errors import SimplyConnectedError
from cartancalc.gca import Algebra
from cartancalc.hochschild import (
    Chain,
    HochschildComplex,
    cap_e_prime,
    chain_of,
    connes_B,
    hh_L,
    hh_S,
    hh_e,
    hochschild_d,
    insert_s,
    rotate_t,
    shuffle_product,
    theta_map,
    theta_prime,
    word_chain,
    word_degree,
)
from cartancalc.loop import build_loop_model
from cartancalc.randomgen import random_derivation, random_presentation

from helpers import brute_cohomology_dim


def cp2():
    A = Algebra.free([("x", 2), ("y", 5)])
    x, y = A.gens()
    A.set_differential({"y": x**3})
    return A


def sphere():
    A = Algebra.free([("x", 3)])
    A.set_differential({})
    return A


def mono(A, name, e=1):
    m = [0] * len(A.generators)
    m[A.index[name]] = e
    return tuple(m)


def test_word_degree_and_normalization():
    A = cp2()
    w = (mono(A, "x"), (mono(A, "y"), mono(A, "x", 2)))
    assert word_degree(A, w) == 2 + (5 - 1) + (4 - 1)
    # words with unit tail entries normalize to zero
    assert word_chain(A, A.unit_mono, (A.unit_mono,)).is_zero()


def test_hochschild_d_examples():
    A = cp2()
    # d(1[y]) = -1[x^3]: the two head/tail contractions cancel
    c = word_chain(A, A.unit_mono, (mono(A, "y"),))
    assert hochschild_d(c) == word_chain(A, A.unit_mono, (mono(A, "x", 3),), -1)
    # tail-free words: d(a0) = d_A(a0)
    c = word_chain(A, mono(A, "y"))
    assert hochschild_d(c) == word_chain(A, mono(A, "x", 3))
    # odd square in /\(x), d_A = 0: the head merge and the wrap-around face
    # cancel and the middle merge dies on x^2 = 0, so d(1[x|x]) = 0
    B = sphere()
    c = word_chain(B, B.unit_mono, (mono(B, "x"), mono(B, "x")))
    assert hochschild_d(c).is_zero()


def test_mixed_complex_axioms_wordwise():
    for A in (cp2(), sphere()):
        hc = HochschildComplex(A)
        for n in range(12):
            for w in hc.basis(n):
                c = word_chain(A, w[0], w[1])
                assert hochschild_d(hochschild_d(c)).is_zero()
                assert connes_B(connes_B(c)).is_zero()
                assert (
                    hochschild_d(connes_B(c)) + connes_B(hochschild_d(c))
                ).is_zero()


def test_connes_B_examples():
    B = sphere()
    x = mono(B, "x")
    # B(x) = 1[x]
    assert connes_B(word_chain(B, x)) == word_chain(B, B.unit_mono, (x,))
    # B(x[x]) = 2 1[x|x]: the rotation sign is +1
    assert connes_B(word_chain(B, x, (x,))) == word_chain(
        B, B.unit_mono, (x, x), 2
    )
    # B(1[x]) = 0: the inserted unit head dies in the reduced tail
    assert connes_B(word_chain(B, B.unit_mono, (x,))).is_zero()


def test_rotation_kills_unit_heads():
    A = cp2()
    c = word_chain(A, A.unit_mono, (mono(A, "y"),))
    assert rotate_t(c).is_zero()
    assert insert_s(word_chain(A, A.unit_mono, (mono(A, "y"),))).is_zero()


def test_hh_L_examples():
    A = cp2()
    t1 = derivation(A, {"y": A.one()})
    # L(y[x]) = 1[x] with sign +1
    c = word_chain(A, mono(A, "y"), (mono(A, "x"),))
    assert hh_L(t1, c) == word_chain(A, A.unit_mono, (mono(A, "x"),))
    # L(1[y]) = +-1[1] which is zero in the reduced complex
    c = word_chain(A, A.unit_mono, (mono(A, "y"),))
    assert hh_L(t1, c).is_zero()


def test_hh_e_and_S_vanish_on_tail_free_words():
    A = cp2()
    t1 = derivation(A, {"y": A.one()})
    c = word_chain(A, mono(A, "y"))
    assert hh_e(t1, c).is_zero()
    assert hh_S(t1, c).is_zero()


def test_operator_degrees():
    A = cp2()
    x, _ = A.gens()
    th = derivation(A, {"y": x})  # degree -3
    c = word_chain(A, mono(A, "x"), (mono(A, "y"), mono(A, "y")))
    for op, shift in ((hh_L, th.degree), (hh_e, th.degree + 1), (hh_S, th.degree - 1)):
        image = op(th, c)
        if not image.is_zero():
            assert image.degree() == c.degree() + shift
    # S raises the tail length by one
    image = hh_S(th, c)
    assert all(len(w[1]) == 3 for w in image.terms)


def test_contraction_is_cap_product_with_e_prime():
    rng = random.Random(1)
    for A in (cp2(), random_presentation(rng, 4)):
        hc = HochschildComplex(A)
        words = [w for n in range(10) for w in hc.basis(n)][:120]
        for _ in range(8):
            th = random_derivation(A, rng)
            for w in words:
                c = word_chain(A, w[0], w[1])
                assert hh_e(th, c) == cap_e_prime(th, c)


def test_shuffle_product_examples():
    B = sphere()
    x = mono(B, "x")
    one_x = word_chain(B, B.unit_mono, (x,))
    # [x] * [x] = 2 1[x|x]
    assert shuffle_product(one_x, one_x) == word_chain(B, B.unit_mono, (x, x), 2)
    # unit law
    A = cp2()
    c = word_chain(A, mono(A, "x"), (mono(A, "y"),))
    unit = word_chain(A, A.unit_mono)
    assert shuffle_product(c, unit) == c
    assert shuffle_product(unit, c) == c
    # heads multiply
    a0 = word_chain(A, mono(A, "x"))
    b = word_chain(A, mono(A, "x"), (mono(A, "y"),))
    assert shuffle_product(a0, b) == word_chain(
        A, mono(A, "x", 2), (mono(A, "y"),)
    )


def test_shuffle_graded_commutative_and_associative():
    rng = random.Random(3)
    A = cp2()
    hc = HochschildComplex(A)
    words = [w for n in range(9) for w in hc.basis(n)]
    for _ in range(40):
        w1 = words[rng.randrange(len(words))]
        w2 = words[rng.randrange(len(words))]
        c1, c2 = word_chain(A, *w1), word_chain(A, *w2)
        d1, d2 = word_degree(A, w1), word_degree(A, w2)
        sign = -1 if (d1 * d2) % 2 else 1
        assert shuffle_product(c1, c2) == shuffle_product(c2, c1).scale(sign)
    for _ in range(15):
        ws = [words[rng.randrange(len(words))] for _ in range(3)]
        cs = [word_chain(A, *w) for w in ws]
        lhs = shuffle_product(shuffle_product(cs[0], cs[1]), cs[2])
        rhs = shuffle_product(cs[0], shuffle_product(cs[1], cs[2]))
        assert lhs == rhs


def test_theta_map_examples():
    A = cp2()
    model = build_loop_model(A)
    E = model.ext
    # n = 0: identity on heads
    assert theta_map(model, word_chain(A, mono(A, "y"))) == E.gen("y")
    # Theta(x[y]) = x y_bar
    c = word_chain(A, mono(A, "x"), (mono(A, "y"),))
    assert theta_map(model, c) == E.gen("x") * E.gen("y_bar")
    B = sphere()
    mB = build_loop_model(B)
    c = word_chain(B, B.unit_mono, (mono(B, "x"), mono(B, "x")))
    assert theta_map(mB, c) == (mB.ext.gen("x_bar") ** 2).scale(Fraction(1, 2))


def test_theta_is_a_chain_map_and_intertwines_B_with_s():
    rng = random.Random(7)
    for A in (cp2(), random_presentation(rng, 3)):
        model = build_loop_model(A)
        hc = HochschildComplex(A)
        words = [w for n in range(10) for w in hc.basis(n)][:150]
        for w in words:
            c = word_chain(A, *w)
            assert theta_map(model, hochschild_d(c)) == model.ext.d(
                theta_map(model, c)
            )
            assert theta_map(model, connes_B(c)) == model.s.evaluate(
                theta_map(model, c)
            )


def test_theta_prime_examples():
    A = cp2()
    model = build_loop_model(A)
    E = model.ext
    # heads pass through
    assert theta_prime(model, E.gen("x") ** 2) == word_chain(A, mono(A, "x", 2))
    # Theta'(x_bar y_bar) = 1[x|y] + 1[y|x] (the suspended degrees are even)
    c = theta_prime(model, E.gen("x_bar") * E.gen("y_bar"))
    assert c == word_chain(A, A.unit_mono, (mono(A, "x"), mono(A, "y"))) + word_chain(
        A, A.unit_mono, (mono(A, "y"), mono(A, "x"))
    )
    B = sphere()
    mB = build_loop_model(B)
    assert theta_prime(mB, mB.ext.gen("x_bar") ** 2) == word_chain(
        B, B.unit_mono, (mono(B, "x"), mono(B, "x")), 2
    )


def test_theta_section():
    rng = random.Random(11)
    for A in (cp2(), sphere(), random_presentation(rng, 4)):
        model = build_loop_model(A)
        for n in range(11):
            for m in model.ext.basis_of_degree(n):
                elt = model.ext.monomial(m, Fraction(rng.randint(1, 5)))
                assert theta_map(model, theta_prime(model, elt)) == elt


def test_cartan_calculus_identities():
    rng = random.Random(13)
    for A in (cp2(), sphere(), random_presentation(rng, 4)):
        hc = HochschildComplex(A)
        words = [w for n in range(10) for w in hc.basis(n)]
        wire = hochschild_wiring(A)
        for _ in range(10):
            th = random_derivation(A, rng)
            rho = random_derivation(A, rng)
            probes = [
                word_chain(A, *words[rng.randrange(len(words))]) for _ in range(10)
            ]
            assert not check_all(wire, th, rho, probes)


def test_comparison_squares():
    rng = random.Random(17)
    for A in (cp2(), sphere()):
        model = build_loop_model(A)
        hc = HochschildComplex(A)
        words = [w for n in range(10) for w in hc.basis(n)][:150]
        for _ in range(8):
            th = random_derivation(A, rng)
            for w in words:
                c = word_chain(A, *w)
                assert theta_map(model, hh_L(th, c)) == model.op_L(th)(
                    theta_map(model, c)
                )
            for n in range(9):
                for m in model.ext.basis_of_degree(n):
                    elt = model.ext.monomial(m)
                    assert theta_map(
                        model, hh_e(th, theta_prime(model, elt))
                    ) == model.op_e(th)(elt)


def test_chain_of_expands_multilinearly():
    A = cp2()
    x, y = A.gens()
    c = chain_of(A, x + y, [x**2 + y])
    expected = (
        word_chain(A, mono(A, "x"), (mono(A, "x", 2),))
        + word_chain(A, mono(A, "x"), (mono(A, "y"),))
        + word_chain(A, mono(A, "y"), (mono(A, "x", 2),))
        + word_chain(A, mono(A, "y"), (mono(A, "y"),))
    )
    assert c == expected


def test_hochschild_dimensions_match_loop_model():
    # the chain complex computes the same degree-wise dimensions as the
    # loop model (they are quasi-isomorphic)
    for A in (cp2(), sphere()):
        hc = HochschildComplex(A)
        model = build_loop_model(A)
        for n in range(9):
            assert hc.cohomology(n).dimension == model.cohomology(n).dimension


def test_hochschild_against_dense_oracle():
    A = cp2()
    hc = HochschildComplex(A)
    for n in range(7):
        assert hc.cohomology(n).dimension == brute_cohomology_dim(hc, n)


def test_degreewise_bases_need_simply_connected():
    A = Algebra.free([("t", 1)])
    A.set_differential({})
    with pytest.raises(SimplyConnectedError):
        HochschildComplex(A)
