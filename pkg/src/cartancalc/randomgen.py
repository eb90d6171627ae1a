"""Seeded random inputs for the verification suites.

Random presentations are simply connected (degrees 2..9, at most 5
generators).  Differentials map the later generators into the subalgebra
spanned by an initial closed block, which forces d*d = 0 structurally; the
presentation validator re-checks it anyway.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from .derivations import Derivation
from .gca import Algebra, Element, Generator

_NAMES = "abcdefghij"


def random_presentation(rng: random.Random, max_gens: int = 5) -> Algebra:
    count = rng.randrange(2, max_gens + 1)
    gens = [Generator(_NAMES[i], rng.randrange(2, 10)) for i in range(count)]
    alg = Algebra(gens)
    closed = max(1, count // 2)
    diff = {}
    for g in gens[closed:]:
        # value drawn from the closed block, hence automatically closed
        basis = [
            m
            for m in alg.basis_of_degree(g.degree + 1)
            if all(e == 0 for e in m[closed:])
        ]
        if not basis or rng.random() < 0.25:
            continue
        terms = {}
        for _ in range(rng.randrange(1, 3)):
            terms[basis[rng.randrange(len(basis))]] = Fraction(rng.randint(-3, 3))
        val = alg.element(terms)
        if not val.is_zero():
            diff[g.name] = val
    alg.set_differential(diff)
    return alg


def random_element(alg: Algebra, rng: random.Random, degree: int) -> Element:
    basis = alg.basis_of_degree(degree)
    if not basis:
        return alg.zero()
    terms = {}
    for _ in range(min(3, len(basis))):
        terms[basis[rng.randrange(len(basis))]] = Fraction(rng.randint(-4, 4))
    return alg.element(terms)


def random_derivation(
    alg: Algebra,
    rng: random.Random,
    min_degree: int = -9,
    max_degree: int = 4,
    cocycle: bool = False,
) -> Derivation:
    """A nonzero homogeneous derivation; with cocycle=True, a [d,-]-cocycle
    obtained as [d, rho] for random rho (always closed since [d,[d,rho]]=0)."""
    for _ in range(80):
        t = rng.randrange(min_degree, max_degree + 1)
        vals = {}
        for g in alg.generators:
            basis = alg.basis_of_degree(g.degree + t)
            if basis and rng.random() < 0.8:
                vals[g.name] = random_element(alg, rng, g.degree + t)
        theta = Derivation(alg, t, vals)
        if cocycle:
            theta = theta.differential()
        if not theta.is_zero():
            return theta
    return Derivation(alg, 0, {g.name: alg.gen(g.name) for g in alg.generators})
