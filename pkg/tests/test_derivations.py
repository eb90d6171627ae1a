import random
from fractions import Fraction

import pytest

from cartancalc.derivations import (
    DerComplex,
    Derivation,
    der_homology,
    derivation,
    lambda_inv,
    lambda_iso,
)
from cartancalc.errors import CodomainError, DegreeError
from cartancalc.gca import Algebra
from cartancalc.randomgen import random_derivation, random_presentation

from helpers import brute_cohomology_dim


def cp2():
    A = Algebra.free([("x", 2), ("y", 5)])
    x, y = A.gens()
    A.set_differential({"y": x**3})
    return A


def m11():
    A = Algebra.free([("x", 3), ("y", 3), ("z", 5)])
    x, y, z = A.gens()
    A.set_differential({"z": x * y})
    return A


def m14():
    A = Algebra.free([("a", 2), ("x", 3), ("y", 3), ("b", 4), ("v", 5), ("w", 7)])
    a, x, y, b, v, w = A.gens()
    A.set_differential({"y": a**2, "b": a * x, "v": a * b + x * y, "w": 2 * (x * v) + b**2})
    return A


def test_evaluate_leibniz_examples():
    A = cp2()
    x, y = A.gens()
    th = derivation(A, {"y": A.one()})  # (y, 1), degree -5
    assert th.degree == -5
    assert th.evaluate(x**2 * y) == x**2
    assert th.evaluate(A.one()).is_zero()
    B = m11()
    xz, yz, zz = B.gens()
    tz = derivation(B, {"z": B.one()})
    assert tz.evaluate(xz * yz * zz) == xz * yz


def test_evaluate_is_linear():
    A = cp2()
    x, y = A.gens()
    th = derivation(A, {"y": x})
    a = x**2 * y + y.scale(Fraction(2, 3))
    b = x * y
    assert th.evaluate(a + b) == th.evaluate(a) + th.evaluate(b)


def test_derivation_value_degree_checked():
    A = cp2()
    x, _ = A.gens()
    with pytest.raises(DegreeError):
        Derivation(A, -2, {"y": x})  # x has degree 2, need |y| - 2 = 3


def test_der_differential_examples():
    A = cp2()
    x, y = A.gens()
    # (y, 1) is a [d, -]-cocycle
    assert derivation(A, {"y": A.one()}).differential().is_zero()
    # [d, d] = 2 d^2 = 0
    d_der = Derivation(A, 1, {"y": x**3})
    assert d_der.differential().is_zero()
    # theta = (x, y): [d, theta](x) = d(y) = x^3 and [d, theta](y) = theta(x^3) = 3 x^2 y
    th = derivation(A, {"x": y})
    dth = th.differential()
    assert dth.value("x") == x**3
    assert dth.value("y") == (x**2 * y).scale(3)
    # applying [d, -] twice kills anything
    assert dth.differential().is_zero()


def test_lie_bracket_examples():
    A = cp2()
    x, y = A.gens()
    t1 = derivation(A, {"y": A.one()})
    rho = derivation(A, {"x": y})
    br = t1.bracket(rho)
    assert br.value("x") == A.one()
    assert br.value("y").is_zero()
    # graded antisymmetry kills the self bracket of an even derivation
    even = derivation(A, {"x": x**2})
    assert even.bracket(even).is_zero()


def test_bracket_properties_random():
    rng = random.Random(5)
    for _ in range(12):
        A = random_presentation(rng, 4)
        f = random_derivation(A, rng)
        g = random_derivation(A, rng)
        h = random_derivation(A, rng)
        sfg = -1 if (f.degree * g.degree) % 2 else 1
        assert f.bracket(g) == g.bracket(f).scale(-sfg)
        # graded Jacobi: [f,[g,h]] = [[f,g],h] + (-1)^{|f||g|}[g,[f,h]]
        lhs = f.bracket(g.bracket(h))
        rhs = f.bracket(g).bracket(h) + g.bracket(f.bracket(h)).scale(sfg)
        assert lhs == rhs
        # [d, -] is a derivation of the bracket
        sf = -1 if f.degree % 2 else 1
        assert f.bracket(g).differential() == f.differential().bracket(g) + f.bracket(
            g.differential()
        ).scale(sf)
        assert f.differential().differential().is_zero()


def test_bracket_requires_endomorphisms():
    A = cp2()
    model_embed = lambda m: m + (0, 0)
    th = Derivation(A, -5, {"y": A.one()}, codomain=A, embed=None)
    proper = Derivation(A, -5, {"y": A.one()}, codomain=A, embed=model_embed)
    with pytest.raises(CodomainError):
        proper.bracket(th)


def test_der_homology_tables():
    A = cp2()
    x, _ = A.gens()
    dims = {n: der_homology(A, n).dimension for n in range(2, 9)}
    assert dims == {2: 0, 3: 1, 4: 0, 5: 1, 6: 0, 7: 0, 8: 0}
    cx = DerComplex(A)
    h5 = cx.cohomology(-5)
    assert any(h5.class_of(cx.vector_of(derivation(A, {"y": A.one()}))))
    h3 = cx.cohomology(-3)
    assert any(h3.class_of(cx.vector_of(derivation(A, {"y": x}))))

    B = m11()
    dims = {n: der_homology(B, n).dimension for n in range(2, 9)}
    assert dims == {2: 0, 3: 0, 4: 0, 5: 1, 6: 0, 7: 0, 8: 0}

    C = m14()
    a = C.gen("a")
    dims = {n: der_homology(C, n).dimension for n in range(2, 10)}
    assert dims == {2: 0, 3: 0, 4: 0, 5: 1, 6: 0, 7: 1, 8: 0, 9: 0}
    assert any(
        DerComplex(C).cohomology(-7).class_of(
            DerComplex(C).vector_of(derivation(C, {"w": C.one()}))
        )
    )
    assert any(
        DerComplex(C).cohomology(-5).class_of(
            DerComplex(C).vector_of(derivation(C, {"w": a}))
        )
    )


def test_der_homology_against_brute_force():
    rng = random.Random(9)
    algebras = [cp2(), m11()] + [random_presentation(rng, 4) for _ in range(3)]
    for A in algebras:
        cx = DerComplex(A)
        for n in range(2, 7):
            assert cx.cohomology(-n).dimension == brute_cohomology_dim(cx, -n)


def test_lambda_iso_examples():
    A = cp2()
    t1 = derivation(A, {"y": A.one()})
    lam = lambda_iso(t1)
    assert lam["y"] == -A.one()  # matches the contraction e_(y,1) = -(y_bar, 1)
    assert lam["x"].is_zero()
    zero = Derivation(A, -5, {})
    assert all(v.is_zero() for v in lambda_iso(zero).values())


def test_lambda_inverse_roundtrip():
    rng = random.Random(3)
    for _ in range(10):
        A = random_presentation(rng, 4)
        th = random_derivation(A, rng)
        assert lambda_inv(A, lambda_iso(th), th.degree + 1) == th


def test_lambda_anticommutes_with_differentials():
    # D(lambda(theta)) = -lambda([d, theta]), with the Hom differential
    # (Df)(vbar) = d(f(vbar)) - (-1)^{|f|} f(d vbar)
    from cartancalc.loop import build_loop_model

    rng = random.Random(8)
    for _ in range(12):
        A = random_presentation(rng, 4)
        model = build_loop_model(A)
        th = random_derivation(A, rng)
        lam = lambda_iso(th)
        hom_deg = th.degree + 1
        lam_d = lambda_iso(th.differential())

        def apply_hom(elt):
            out = A.zero()
            for m, c in elt.terms.items():
                base_part, bars = model.split_mono(m)
                (i,) = [k for k, e in enumerate(bars) if e]
                koszul = -1 if (hom_deg * A.mono_degree(base_part)) % 2 else 1
                out = out + (A.monomial(base_part) * lam[A.generators[i].name]).scale(
                    koszul * c
                )
            return out

        sgn = -1 if hom_deg % 2 else 1
        for g in A.generators:
            dvbar = model.ext.d(model.ext.gen(g.name + "_bar"))
            lhs = A.d(lam[g.name]) - apply_hom(dvbar).scale(sgn)
            assert lhs == -lam_d[g.name]


def test_hom_complex_dimensions_match_der():
    # H^t(Hom(L_(1), A)) is H^{t-1}(Der A) as graded spaces
    from cartancalc.loop import HomComplex, build_loop_model

    for A in (cp2(), m11()):
        model = build_loop_model(A)
        hom = HomComplex(model, 1)
        der = DerComplex(A)
        for t in range(-6, 3):
            assert hom.cohomology(t).dimension == der.cohomology(t - 1).dimension
