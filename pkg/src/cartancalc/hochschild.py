"""The Hochschild chain mixed complex of a connected presentation.

Chains live in A (x) T(s A-bar): a basis word a0[a1|...|an] has a head
monomial a0 in A and tail monomials ai in the augmentation ideal; its
cohomological degree is |a0| + sum(|ai| - 1).  Words acquiring a unit tail
entry are zero (the complex is normalized/reduced over A-bar).

With eps_i = |a0| + sum_{j<i} |s a_j|, the differential d = d1 + d2 is

    d1,0 = d(a0)[a1|...|an]
    d1,i = (-1)^{eps_i + 1} a0[a1|...|d(ai)|...|an]            (1 <= i <= n)
    d2,0 = (-1)^{|a0|} (a0 a1)[a2|...|an]
    d2,i = (-1)^{eps_{i+1}} a0[a1|...|ai a_{i+1}|...|an]       (0 < i < n)
    d2,n = (-1)^{eps_n |s a_n| + 1} (an a0)[a1|...|a_{n-1}]

and the degree -1 differential is Connes' operator B = s(1 + t + ... + t^n)
built from the cyclic rotation t and the extra-tensor insertion s:

    t(a0[a1|...|an]) = (-1)^{|s a_n|(eps_n + 1)} an[a0|...|a_{n-1}]
    s(a0[a1|...|an]) = 1[a0|a1|...|an].

For a derivation theta of A the operators

    L_theta = sum_i L_{theta,i}     (L at the head, signed L in each slot)
    e_theta (a0[a1|...]) = (-1)^{|th||a0|+|th|+|a0|} (a0 theta(a1))[a2|...]
    S_theta = sum_{j=1..n} (sum_{k=0..n-j} s t^k) L_{theta,j}

form with [d,-] and [B,-] a homotopy Cartan calculus with T = 0; the
identities are checkable through :mod:`cartancalc.calculus`.  The shuffle
product, the quasi-isomorphism Theta onto the loop model and its section
Theta' (Theta o Theta' = 1) complete the comparison with the loop-model
calculus.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, Iterable, List, Tuple

from .derivations import Derivation
from .errors import PresentationMismatchError, SimplyConnectedError
from .gca import Algebra, Element, Mono
from .homology import Complex, Vec
from .loop import LoopModel

Word = Tuple[Mono, Tuple[Mono, ...]]  # (head, tail)


class Chain:
    """Q-linear combination of Hochschild basis words over one algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = {w: c for w, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        degs = {word_degree(self.alg, w) for w in self.terms}
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def _check(self, other: "Chain"):
        if not (self.alg is other.alg or self.alg.same_presentation(other.alg)):
            raise PresentationMismatchError("chains over different presentations")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, Fraction(0)) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return Chain(self.alg, terms)

    def __neg__(self) -> "Chain":
        return Chain(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def scale(self, c) -> "Chain":
        c = Fraction(c)
        return Chain(self.alg, {w: c * x for w, x in self.terms.items()}) if c else Chain(self.alg, {})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.terms == other.terms and (
            self.alg is other.alg or self.alg.same_presentation(other.alg)
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w, c in sorted(
            self.terms.items(), key=lambda wc: (word_degree(self.alg, wc[0]), wc[0])
        ):
            ws = word_str(self.alg, w)
            bits.append(ws if c == 1 else f"({c})*{ws}")
        return " + ".join(bits)

    def __repr__(self):
        return f"<chain {self}>"


def word_degree(alg: Algebra, w: Word) -> int:
    head, tail = w
    return alg.mono_degree(head) + sum(alg.mono_degree(t) - 1 for t in tail)


def word_str(alg: Algebra, w: Word) -> str:
    head, tail = w
    inner = "|".join(alg.mono_str(t) for t in tail)
    return f"{alg.mono_str(head)}[{inner}]"


def chain_of(alg: Algebra, head: Element, tail: Iterable[Element]) -> Chain:
    """Multilinear expansion of head (x) tail entries into basis words."""
    words: Dict[Word, Fraction] = {}
    tail = list(tail)

    def rec(i, head_mono, tail_monos, coeff):
        if i == len(tail):
            _add_word(alg, words, head_mono, tuple(tail_monos), coeff)
            return
        for m, c in tail[i].terms.items():
            rec(i + 1, head_mono, tail_monos + [m], coeff * c)

    for hm, hc in head.terms.items():
        rec(0, hm, [], hc)
    return Chain(alg, words)


def _add_word(alg: Algebra, acc: dict, head: Mono, tail: Tuple[Mono, ...], coeff):
    """Accumulate a word, killing those with unit tail entries."""
    if not coeff:
        return
    for t in tail:
        if not any(t):
            return
    w = (head, tail)
    s = acc.get(w, Fraction(0)) + coeff
    if s:
        acc[w] = s
    else:
        acc.pop(w, None)


def word_chain(alg: Algebra, head: Mono, tail=(), coeff=1) -> Chain:
    acc: dict = {}
    _add_word(alg, acc, head, tuple(tail), Fraction(coeff))
    return Chain(alg, acc)


def _eps(alg: Algebra, head: Mono, tail, i: int) -> int:
    """eps_i = |a0| + sum_{j<i} |s a_j| (i >= 1; eps_1 = |a0|)."""
    return alg.mono_degree(head) + sum(
        alg.mono_degree(t) - 1 for t in tail[: i - 1]
    )


def _wordwise(chain: Chain, fn) -> Chain:
    acc: dict = {}
    alg = chain.alg
    for (head, tail), coeff in chain.terms.items():
        fn(alg, acc, head, tail, coeff)
    return Chain(alg, acc)


def hochschild_d(chain: Chain) -> Chain:
    """The total differential d1 + d2 (degree +1)."""

    def fn(alg, acc, head, tail, coeff):
        n = len(tail)
        hdeg = alg.mono_degree(head)
        # eps[i] = |a0| + sum_{j<i} |s a_j|, index 1..n
        eps = [hdeg]
        for t in tail:
            eps.append(eps[-1] + alg.mono_degree(t) - 1)
        # d1,0
        for m, c in alg.d_mono(head).items():
            _add_word(alg, acc, m, tail, coeff * c)
        for i in range(1, n + 1):
            sign = -1 if (eps[i - 1] + 1) % 2 else 1
            for m, c in alg.d_mono(tail[i - 1]).items():
                _add_word(
                    alg, acc, head, tail[: i - 1] + (m,) + tail[i:], sign * coeff * c
                )
        if n == 0:
            return
        # d2,0
        sm = alg.mono_mul(head, tail[0])
        if sm is not None:
            sign = sm[0] * (-1 if hdeg % 2 else 1)
            _add_word(alg, acc, sm[1], tail[1:], sign * coeff)
        # d2,i for 0 < i < n, with sign (-1)^{eps_{i+1}}
        for i in range(1, n):
            sm = alg.mono_mul(tail[i - 1], tail[i])
            if sm is not None:
                sign = sm[0] * (-1 if eps[i] % 2 else 1)
                _add_word(
                    alg, acc, head, tail[: i - 1] + (sm[1],) + tail[i + 1 :],
                    sign * coeff,
                )
        # d2,n (wrap-around face)
        sm = alg.mono_mul(tail[-1], head)
        if sm is not None:
            sn = alg.mono_degree(tail[-1]) - 1
            sign = sm[0] * (-1 if (eps[n - 1] * sn + 1) % 2 else 1)
            _add_word(alg, acc, sm[1], tail[:-1], sign * coeff)

    return _wordwise(chain, fn)


def rotate_t(chain: Chain) -> Chain:
    """The cyclic rotation t (identity on tail-free words)."""

    def fn(alg, acc, head, tail, coeff):
        n = len(tail)
        if n == 0:
            _add_word(alg, acc, head, tail, coeff)
            return
        sn = alg.mono_degree(tail[-1]) - 1
        sign = -1 if (sn * (_eps(alg, head, tail, n) + 1)) % 2 else 1
        _add_word(alg, acc, tail[-1], (head,) + tail[:-1], sign * coeff)

    return _wordwise(chain, fn)


def insert_s(chain: Chain) -> Chain:
    """The extra-tensor insertion s(a0[a1|...|an]) = 1[a0|a1|...|an]."""

    def fn(alg, acc, head, tail, coeff):
        _add_word(alg, acc, alg.unit_mono, (head,) + tail, coeff)

    return _wordwise(chain, fn)


def connes_B(chain: Chain) -> Chain:
    """B = s (1 + t + ... + t^n) on words with n tail entries (degree -1)."""
    alg = chain.alg
    out = Chain(alg, {})
    for (head, tail), coeff in chain.terms.items():
        current = word_chain(alg, head, tail, coeff)
        for _ in range(len(tail) + 1):
            out = out + insert_s(current)
            current = rotate_t(current)
    return out


# -- the calculus operators ---------------------------------------------------


def _theta_check(theta: Derivation, chain: Chain):
    if not theta.is_endomorphism():
        raise PresentationMismatchError("operator requires a self-derivation")
    if not theta.domain.same_presentation(chain.alg):
        raise PresentationMismatchError("derivation and chain algebras differ")


def hh_L(theta: Derivation, chain: Chain) -> Chain:
    """Lie derivative on chains (degree |theta|)."""
    _theta_check(theta, chain)
    td = theta.degree
    cache: dict = {}

    def theta_mono(alg, m):
        out = cache.get(m)
        if out is None:
            out = theta.evaluate(alg.monomial(m)).terms
            cache[m] = out
        return out

    def fn(alg, acc, head, tail, coeff):
        for m, c in theta_mono(alg, head).items():
            _add_word(alg, acc, m, tail, coeff * c)
        for i in range(1, len(tail) + 1):
            sign = -1 if (td * (_eps(alg, head, tail, i) + 1)) % 2 else 1
            for m, c in theta_mono(alg, tail[i - 1]).items():
                _add_word(
                    alg, acc, head, tail[: i - 1] + (m,) + tail[i:], sign * coeff * c
                )

    return _wordwise(chain, fn)


def hh_L_slot(theta: Derivation, i: int, chain: Chain) -> Chain:
    """The single summand L_{theta,i} (i = 0 acts on the head)."""
    _theta_check(theta, chain)
    td = theta.degree

    def fn(alg, acc, head, tail, coeff):
        if i == 0:
            for m, c in theta.evaluate(alg.monomial(head)).terms.items():
                _add_word(alg, acc, m, tail, coeff * c)
            return
        if i > len(tail):
            return
        sign = -1 if (td * (_eps(alg, head, tail, i) + 1)) % 2 else 1
        for m, c in theta.evaluate(alg.monomial(tail[i - 1])).terms.items():
            _add_word(
                alg, acc, head, tail[: i - 1] + (m,) + tail[i:], sign * coeff * c
            )

    return _wordwise(chain, fn)


def hh_e(theta: Derivation, chain: Chain) -> Chain:
    """Contraction on chains (degree |theta| + 1); zero on tail-free words."""
    _theta_check(theta, chain)
    td = theta.degree

    def fn(alg, acc, head, tail, coeff):
        if not tail:
            return
        h = alg.mono_degree(head)
        sign = -1 if (td * h + td + h) % 2 else 1
        prod = alg.monomial(head) * theta.evaluate(alg.monomial(tail[0]))
        for m, c in prod.terms.items():
            _add_word(alg, acc, m, tail[1:], sign * coeff * c)

    return _wordwise(chain, fn)


def hh_S(theta: Derivation, chain: Chain) -> Chain:
    """The Cartan homotopy S_theta = sum_j (sum_k s t^k) L_{theta,j}
    (degree |theta| - 1); zero on tail-free words."""
    _theta_check(theta, chain)
    alg = chain.alg
    out = Chain(alg, {})
    for (head, tail), coeff in chain.terms.items():
        n = len(tail)
        single = word_chain(alg, head, tail, coeff)
        for j in range(1, n + 1):
            lj = hh_L_slot(theta, j, single)
            current = lj
            for _ in range(n - j + 1):
                out = out + insert_s(current)
                current = rotate_t(current)
    return out


def e_prime_cochain(theta: Derivation):
    """The one-slot cochain e'_theta in the (n+2)-argument convention:
    e'(a0[a1]a2) = (-1)^{|th||a0|+|th|+|a0|} a0 theta(a1) a2, zero for n != 1."""
    td = theta.degree

    def fn(alg: Algebra, head: Mono, slots: Tuple[Mono, ...], last: Element) -> Element:
        if len(slots) != 1:
            return theta.codomain.zero()
        h = alg.mono_degree(head)
        sign = -1 if (td * h + td + h) % 2 else 1
        return (
            alg.monomial(head, sign) * theta.evaluate(alg.monomial(slots[0])) * last
        )

    return fn, 1


def cap_product(cochain, arity: int, chain: Chain) -> Chain:
    """Cap a tail-arity-p cochain against a chain: feed the head, the first
    p tail entries and a closing unit into the cochain, keep the rest of
    the tail.  The convention is normalized so that capping with e'_theta
    reproduces the contraction e_theta exactly."""

    def fn(alg, acc, head, tail, coeff):
        if len(tail) < arity:
            return
        value = cochain(alg, head, tail[:arity], alg.one())
        for m, c in value.terms.items():
            _add_word(alg, acc, m, tail[arity:], coeff * c)

    return _wordwise(chain, fn)


def cap_e_prime(theta: Derivation, chain: Chain) -> Chain:
    fn, arity = e_prime_cochain(theta)
    return cap_product(fn, arity, chain)


# -- shuffle product and the comparison maps ---------------------------------


def shuffle_product(c1: Chain, c2: Chain) -> Chain:
    """The shuffle product (graded-commutative, associative, unital for
    commutative coefficients): heads multiply, tails interleave with Koszul
    signs in the suspended degrees |s a_i|."""
    c1._check(c2)
    alg = c1.alg
    acc: dict = {}
    for (h1, t1), x1 in c1.terms.items():
        sdegs1 = [alg.mono_degree(t) - 1 for t in t1]
        for (h2, t2), x2 in c2.terms.items():
            sdegs2 = [alg.mono_degree(t) - 1 for t in t2]
            base_coeff = x1 * x2
            # move the second head left past the suspended first tail
            if (alg.mono_degree(h2) * sum(sdegs1)) % 2:
                base_coeff = -base_coeff
            headprod = alg.monomial(h1) * alg.monomial(h2)
            if headprod.is_zero():
                continue
            p, q = len(t1), len(t2)
            for positions in combinations(range(p + q), p):
                merged: List[Mono] = [alg.unit_mono] * (p + q)
                take = set(positions)
                slots2 = [i for i in range(p + q) if i not in take]
                sign = 1
                # Koszul sign: s b_j crosses every s a_i placed after it
                for bj, pos2 in enumerate(slots2):
                    crossed = sum(
                        sdegs1[ai] for ai in range(p) if positions[ai] > pos2
                    )
                    if (sdegs2[bj] * crossed) % 2:
                        sign = -sign
                for idx, pos in enumerate(positions):
                    merged[pos] = t1[idx]
                for idx, pos in enumerate(slots2):
                    merged[pos] = t2[idx]
                for hm, hc in headprod.terms.items():
                    _add_word(
                        alg, acc, hm, tuple(merged), base_coeff * hc * sign
                    )
    return Chain(alg, acc)


def theta_map(model: LoopModel, chain: Chain) -> Element:
    """Theta(a0[a1|...|an]) = (1/n!) a0 s(a1) ... s(an) in the loop model."""
    if not model.base.same_presentation(chain.alg):
        raise PresentationMismatchError("chain is not over the model's base")
    out = model.ext.zero()
    for (head, tail), coeff in chain.terms.items():
        term = model.include(model.base.monomial(head))
        for t in tail:
            term = term * model.s.evaluate(model.include(model.base.monomial(t)))
        out = out + term.scale(Fraction(coeff, factorial(len(tail))))
    return out


def theta_prime(model: LoopModel, elt: Element) -> Chain:
    """Theta'(a v1_bar ... vk_bar) = a * [v1] * ... * [vk] (shuffles)."""
    if not model.ext._owns(elt):
        raise PresentationMismatchError("element is not in the loop model")
    base = model.base
    out = Chain(base, {})
    for m, coeff in elt.terms.items():
        a, bars = model.split_mono(m)
        chain = word_chain(base, a, (), coeff)
        for i, e in enumerate(bars):
            gen_mono = tuple(1 if j == i else 0 for j in range(model.nbase))
            letter = word_chain(base, base.unit_mono, (gen_mono,))
            for _ in range(e):
                chain = shuffle_product(chain, letter)
        out = out + chain
    return out


# -- the chain complex for the homology engine --------------------------------


class HochschildComplex(Complex):
    """Degree-wise complete Hochschild complex; requires every generator of
    degree >= 2 so that each degree is finite-dimensional."""

    def __init__(self, alg: Algebra):
        for g in alg.generators:
            if g.degree < 2:
                raise SimplyConnectedError(
                    "degree-wise Hochschild bases need generators of degree >= 2"
                )
        self.alg = alg
        self._tails_cache: dict = {}

    def tails_of_weight(self, w: int):
        """All tails with sum(|ai| - 1) = w, ordered, cached."""
        if w in self._tails_cache:
            return self._tails_cache[w]
        if w == 0:
            out: tuple = ((),)
        else:
            acc = []
            for first_w in range(1, w + 1):
                for mono in self.alg.basis_of_degree(first_w + 1):
                    for rest in self.tails_of_weight(w - first_w):
                        acc.append((mono,) + rest)
            out = tuple(acc)
        self._tails_cache[w] = out
        return out

    def basis(self, n: int):
        if n < 0:
            return ()
        out = []
        for h in range(n + 1):
            for head in self.alg.basis_of_degree(h):
                for tail in self.tails_of_weight(n - h):
                    out.append((head, tail))
        return tuple(out)

    def differential(self, word):
        head, tail = word
        image = hochschild_d(word_chain(self.alg, head, tail))
        return [(c, w) for w, c in image.terms.items()]

    def label(self, word) -> str:
        return word_str(self.alg, word)

    def chain_vector(self, chain: Chain, n: int) -> Vec:
        return self.vector(n, [(c, w) for w, c in chain.terms.items()])

    def from_vector(self, n: int, vec: Vec) -> Chain:
        basis = self.basis(n)
        return Chain(self.alg, {basis[i]: c for i, c in vec.items()})
