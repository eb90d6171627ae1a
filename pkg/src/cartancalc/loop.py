"""Free-loop-space model of a simply-connected algebra and its operators.

For a presentation (A, d) = (/\\V, d) with every generator of degree >= 2,
the loop model is the mixed algebra L = /\\V (x) /\\V_bar where each
generator v acquires a partner v_bar of degree |v| - 1.  The degree -1
derivation s sends v to v_bar and v_bar to 0, and the differential extends
d by d(v_bar) = -s(d v), the unique choice with [d, s] = 0.  Word length in
the barred generators splits L into subcomplexes L_(k) (the Hodge pieces),
and the class map induced by s is the Batalin-Vilkovisky operator on H(L).

A derivation theta of the base algebra induces derivations on L:

    L_theta v = theta v,   L_theta v_bar = (-1)^{deg theta} s theta v
    e_theta v = 0,         e_theta v_bar = (-1)^{deg theta} theta v

(the Lie derivative, degree |theta|, and the contraction, degree
|theta| + 1 in the cohomological convention used throughout this package).
These satisfy a homotopy Cartan calculus with vanishing homotopies:
L_theta = [s, e_theta], [d, e_theta] + e_{[d,theta]} = 0 and
[e_theta, L_rho] = e_{[theta,rho]}; see :mod:`cartancalc.calculus`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .derivations import DerComplex, Derivation
from .errors import (
    FundamentalClassError,
    NotACocycleError,
    PoincareDualityError,
    PresentationError,
    SimplyConnectedError,
)
from .gca import Algebra, Element, Generator, Mono
from .homology import CohomologySpace, Complex, ColumnSpace, Slice, Vec


class AlgebraComplex(Complex):
    """The underlying cochain complex of a presentation (monomial basis)."""

    def __init__(self, alg: Algebra):
        self.alg = alg

    def basis(self, n: int):
        return self.alg.basis_of_degree(n)

    def differential(self, mono):
        image = self.alg.d(self.alg.monomial(mono))
        return [(c, m) for m, c in image.terms.items()]

    def label(self, mono) -> str:
        return self.alg.mono_str(mono)

    def element_vector(self, e: Element, n: int) -> Vec:
        return self.vector(n, [(c, m) for m, c in e.terms.items()])

    def from_vector(self, n: int, vec: Vec) -> Element:
        basis = self.basis(n)
        return self.alg.element({basis[i]: c for i, c in vec.items()})


BAR_SUFFIX = "_bar"


def bar_name(name: str) -> str:
    return name + BAR_SUFFIX


class LoopModel:
    """The mixed algebra (L, d, s) over a simply-connected base."""

    def __init__(self, base: Algebra):
        for g in base.generators:
            if g.degree < 2:
                raise SimplyConnectedError(
                    f"loop model needs generators of degree >= 2;"
                    f" {g.name} has degree {g.degree}"
                )
        self.base = base
        self.nbase = len(base.generators)
        gens = list(base.generators) + [
            Generator(bar_name(g.name), g.degree - 1) for g in base.generators
        ]
        ext = Algebra(gens)
        self.ext = ext
        self.s = Derivation(
            ext,
            -1,
            {g.name: ext.gen(bar_name(g.name)) for g in base.generators},
        )
        dvals: Dict[str, Element] = {}
        for i, g in enumerate(base.generators):
            dv = self.include(base.differential[i])
            if not dv.is_zero():
                dvals[g.name] = dv
            dbar = -self.s.evaluate(dv)
            if not dbar.is_zero():
                dvals[bar_name(g.name)] = dbar
        ext.set_differential(dvals)
        self._validate()
        self._complex = AlgebraComplex(ext)
        self._base_complex = AlgebraComplex(base)
        self._hodge: Dict[int, HodgeComplex] = {}

    def _validate(self):
        ext = self.ext
        for g in ext.generators:
            v = ext.gen(g.name)
            if not self.s.evaluate(self.s.evaluate(v)).is_zero():
                raise PresentationError(f"s^2 != 0 on {g.name}")
            anti = ext.d(self.s.evaluate(v)) + self.s.evaluate(ext.d(v))
            if not anti.is_zero():
                raise PresentationError(f"[d, s] != 0 on {g.name}: {anti}")
            if not ext.d(ext.d(v)).is_zero():
                raise PresentationError(f"d^2 != 0 on {g.name}")
        for g in self.base.generators:
            dbar = ext.d(ext.gen(bar_name(g.name)))
            if any(self.word_length(m) != 1 for m in dbar.terms):
                raise PresentationError(
                    f"d({bar_name(g.name)}) leaves word length 1: {dbar}"
                )

    # -- moving between base and extension ---------------------------------

    def include_mono(self, m: Mono) -> Mono:
        return m + (0,) * self.nbase

    def include(self, e: Element) -> Element:
        return self.ext.element({self.include_mono(m): c for m, c in e.terms.items()})

    def split_mono(self, m: Mono) -> Tuple[Mono, Mono]:
        """(base part, bar part) of an extended monomial."""
        return m[: self.nbase], m[self.nbase :]

    def word_length(self, m: Mono) -> int:
        return sum(m[self.nbase :])

    def to_base(self, e: Element) -> Element:
        terms = {}
        for m, c in e.terms.items():
            a, b = self.split_mono(m)
            if any(b):
                raise PresentationError("element has positive word length")
            terms[a] = c
        return self.base.element(terms)

    def d_derivation(self) -> Derivation:
        return Derivation(
            self.ext,
            1,
            {
                g.name: self.ext.differential[i]
                for i, g in enumerate(self.ext.generators)
            },
        )

    # -- operators ----------------------------------------------------------

    def op_L(self, theta: Derivation) -> Derivation:
        """Lie derivative on L of a base derivation (degree |theta|)."""
        sign = -1 if theta.degree % 2 else 1
        vals: Dict[str, Element] = {}
        for g in self.base.generators:
            tv = self.include(theta.value(g.name))
            if not tv.is_zero():
                vals[g.name] = tv
            sv = self.s.evaluate(tv).scale(sign)
            if not sv.is_zero():
                vals[bar_name(g.name)] = sv
        return Derivation(self.ext, theta.degree, vals)

    def op_e(self, theta: Derivation) -> Derivation:
        """Contraction on L of a base derivation.

        As an operator it raises cohomological degree by |theta| + 1; in the
        homological convention (degrees negated) it is a map of degree -1
        alongside the degree-0 Lie derivative.
        """
        sign = -1 if theta.degree % 2 else 1
        vals: Dict[str, Element] = {}
        for g in self.base.generators:
            tv = self.include(theta.value(g.name)).scale(sign)
            if not tv.is_zero():
                vals[bar_name(g.name)] = tv
        return Derivation(self.ext, theta.degree + 1, vals)

    # -- complexes ------------------------------------------------------------

    @property
    def complex(self) -> AlgebraComplex:
        return self._complex

    @property
    def base_complex(self) -> AlgebraComplex:
        return self._base_complex

    def hodge(self, k: int) -> "HodgeComplex":
        if k not in self._hodge:
            self._hodge[k] = HodgeComplex(self, k)
        return self._hodge[k]

    def cohomology(self, n: int) -> CohomologySpace:
        return self._complex.cohomology(n)


def build_loop_model(base: Algebra) -> LoopModel:
    return LoopModel(base)


class HodgeComplex(Complex):
    """The word-length k subcomplex L_(k) = /\\V (x) /\\^k V_bar."""

    def __init__(self, model: LoopModel, k: int):
        self.model = model
        self.k = k

    def basis(self, n: int):
        return tuple(
            m
            for m in self.model.ext.basis_of_degree(n)
            if self.model.word_length(m) == self.k
        )

    def differential(self, mono):
        image = self.model.ext.d(self.model.ext.monomial(mono))
        return [(c, m) for m, c in image.terms.items()]

    def label(self, mono) -> str:
        return self.model.ext.mono_str(mono)

    def element_vector(self, e: Element, n: int) -> Vec:
        return self.vector(n, [(c, m) for m, c in e.terms.items()])

    def from_vector(self, n: int, vec: Vec) -> Element:
        basis = self.basis(n)
        return self.model.ext.element({basis[i]: c for i, c in vec.items()})


def hodge_cohomology(model: LoopModel, n: int, k: int) -> CohomologySpace:
    return model.hodge(k).cohomology(n)


def bv_on_cohomology(model: LoopModel, n: int) -> Slice:
    """Matrix of the BV operator H^n(L) -> H^{n-1}(L) induced by s, in the
    computed representative bases."""
    source = model.cohomology(n)
    target = model.cohomology(n - 1)
    columns = []
    for rep in source.representatives:
        elt = model.complex.from_vector(n, rep)
        image = model.s.evaluate(elt)
        vec = model.complex.element_vector(image, n - 1)
        coords = target.class_of(vec)
        columns.append({i: c for i, c in enumerate(coords) if c})
    return Slice(
        degree=n,
        source_basis=tuple(range(source.dimension)),
        target_basis=tuple(range(target.dimension)),
        source_labels=tuple(f"[{i}]" for i in range(source.dimension)),
        target_labels=tuple(f"[{i}]" for i in range(target.dimension)),
        columns=tuple(columns),
    )


# -- Poincare duality, evaluation pairing, fundamental class -----------------


def formal_dimension(alg: Algebra) -> int:
    """Expected top degree of an elliptic presentation:
    sum of odd generator degrees minus sum of (even degree - 1)."""
    m = 0
    for g in alg.generators:
        m += g.degree if g.degree % 2 else -(g.degree - 1)
    return m


def fundamental_class(alg: Algebra):
    """(m, representative, H^m) after verifying cohomology-level duality:
    H^m is one-dimensional and H^j = 0 on a window above m.  The
    representative is rescaled so its first monomial has coefficient 1."""
    m = formal_dimension(alg)
    if m < 0:
        raise PoincareDualityError(f"formal dimension {m} is negative")
    cx = AlgebraComplex(alg)
    top = cx.cohomology(m)
    if top.dimension != 1:
        raise PoincareDualityError(
            f"H^{m} has dimension {top.dimension}, expected 1"
        )
    window = max(g.degree for g in alg.generators) + 1
    for j in range(m + 1, m + window + 1):
        if cx.cohomology(j).dimension != 0:
            raise PoincareDualityError(
                f"H^{j} is nonzero above the detected top degree {m}"
            )
    rep = cx.from_vector(m, top.representatives[0])
    lead = min(rep.terms)  # first monomial in the global order
    rep = rep.scale(Fraction(1) / rep.terms[lead])
    return m, rep, top


class HomComplex(Complex):
    """Hom over the base algebra from L_(k) into the base.

    L_(k) is a free base-module on the bar monomials b of word length k, so
    a degree-t element is a sum of elementary maps f_{b,w} (b -> w) with
    |w| = |b| + t, extended base-linearly with the Koszul rule
    f(a b) = (-1)^{t |a|} a f(b).  The differential is
    (Df)(b) = d f(b) - (-1)^t f(d b).
    """

    def __init__(self, model: LoopModel, k: int):
        self.model = model
        self.k = k
        self.bars = self._bar_monomials()
        self.bar_index = {b: i for i, b in enumerate(self.bars)}
        # occurrences[b] = [(b', coeff, base part)] over terms of d(b')
        self.occurrences: Dict[Mono, List] = {}
        for b in self.bars:
            ext_mono = self._ext_mono(b)
            db = self.model.ext.d(self.model.ext.monomial(ext_mono))
            for m, c in db.terms.items():
                a, bm = self.model.split_mono(m)
                self.occurrences.setdefault(bm, []).append((b, c, a))

    def _bar_monomials(self):
        ext = self.model.ext
        nb = self.model.nbase
        out = []

        def rec(i, remaining, prefix):
            if remaining == 0:
                out.append(tuple(prefix + [0] * (nb - i)))
                return
            if i == nb:
                return
            top = remaining
            if ext.odd[nb + i]:
                top = min(top, 1)
            for e in range(top + 1):
                rec(i + 1, remaining - e, prefix + [e])

        rec(0, self.k, [])
        out.sort()
        return tuple(out)

    def _ext_mono(self, b: Mono) -> Mono:
        return (0,) * self.model.nbase + b

    def bar_degree(self, b: Mono) -> int:
        return self.model.ext.mono_degree(self._ext_mono(b))

    def basis(self, t: int):
        out = []
        for b in self.bars:
            for w in self.model.base.basis_of_degree(self.bar_degree(b) + t):
                out.append((b, w))
        return tuple(out)

    def label(self, obj) -> str:
        b, w = obj
        ext = self.model.ext
        return f"{ext.mono_str(self._ext_mono(b))} -> {self.model.base.mono_str(w)}"

    def differential(self, obj):
        b, w = obj
        base = self.model.base
        t = base.mono_degree(w) - self.bar_degree(b)
        sign_t = -1 if t % 2 else 1
        out = []
        for m, c in base.d(base.monomial(w)).terms.items():
            out.append((c, (b, m)))
        for bprime, c, a in self.occurrences.get(b, ()):
            koszul = -1 if (t * base.mono_degree(a)) % 2 else 1
            prod = base.monomial(a) * base.monomial(w)
            for m, c2 in prod.terms.items():
                out.append((-sign_t * koszul * c * c2, (bprime, m)))
        return out

    def evaluate(self, t: int, vec: Vec, alpha: Element) -> Element:
        """Value of a degree-t Hom vector on an element of L_(k)."""
        base = self.model.base
        basis = self.basis(t)
        out = base.zero()
        by_bar: Dict[Mono, List] = {}
        for j, coeff in vec.items():
            b, w = basis[j]
            by_bar.setdefault(b, []).append((coeff, w))
        for m, c in alpha.terms.items():
            a, bm = self.model.split_mono(m)
            for coeff, w in by_bar.get(bm, ()):
                koszul = -1 if (t * base.mono_degree(a)) % 2 else 1
                out = out + (base.monomial(a) * base.monomial(w)).scale(
                    koszul * c * coeff
                )
        return out


@dataclass
class PairingReport:
    k: int
    n: int
    top_degree: int
    rows: int  # dim H^{-n}(Hom(L_(k), base))
    cols: int  # dim H^{m+n}(L_(k))
    matrix: tuple  # tuple of row tuples (Fractions)
    square: bool
    full_rank: bool


def pairing_matrix(model: LoopModel, k: int, n: int) -> PairingReport:
    """Evaluation pairing H^{-n}(Hom(L_(k), A)) (x) H^{m+n}(L_(k)) -> H^m(A).

    Entries are the coordinates against the normalized fundamental class.
    Non-degeneracy (square of full rank) is the duality check.
    """
    m, fund, top = fundamental_class(model.base)
    base_cx = model.base_complex
    fund_coord = top.class_of(base_cx.element_vector(fund, m))[0]
    hom = HomComplex(model, k)
    hom_space = hom.cohomology(-n)
    hodge_space = model.hodge(k).cohomology(m + n)
    matrix = []
    for fvec in hom_space.representatives:
        row = []
        for avec in hodge_space.representatives:
            alpha = model.hodge(k).from_vector(m + n, avec)
            value = hom.evaluate(-n, fvec, alpha)
            coords = top.class_of(base_cx.element_vector(value, m))
            row.append(coords[0] / fund_coord)
        matrix.append(tuple(row))
    rows = hom_space.dimension
    cols = hodge_space.dimension
    space = ColumnSpace()
    for j in range(cols):
        space.insert({i: matrix[i][j] for i in range(rows) if matrix[i][j]}, j)
    return PairingReport(
        k=k,
        n=n,
        top_degree=m,
        rows=rows,
        cols=cols,
        matrix=tuple(matrix),
        square=rows == cols,
        full_rank=space.rank == min(rows, cols),
    )


def hit_fundamental_class(model: LoopModel, theta: Derivation) -> Element:
    """A closed alpha in L_(1)^{m+n} with [e_theta(alpha)] the fundamental
    class, for a derivation cocycle theta with nonzero class in H(Der).

    Searches the full cocycle space of L_(1) in the forced degree; existence
    is guaranteed under cohomology-level duality, so exhausting the space
    raises FundamentalClassError (a failed theorem check, not a normal
    outcome)."""
    if not theta.is_cocycle():
        raise NotACocycleError("theta is not a [d,-]-cocycle")
    dercx = DerComplex(model.base)
    der_space = dercx.cohomology(theta.degree)
    if all(c == 0 for c in der_space.class_of(dercx.vector_of(theta))):
        raise FundamentalClassError("theta has vanishing class in H(Der)")
    m, fund, top = fundamental_class(model.base)
    base_cx = model.base_complex
    fund_coord = top.class_of(base_cx.element_vector(fund, m))[0]
    n = -theta.degree - 1
    degree = m + n
    hodge1 = model.hodge(1)
    e_op = model.op_e(theta)
    kernel = hodge1.slice_at(degree).kernel()
    for kv in kernel:
        alpha = hodge1.from_vector(degree, kv)
        value = model.to_base(e_op.evaluate(alpha))
        coords = top.class_of(base_cx.element_vector(value, m))
        if coords[0]:
            witness = alpha.scale(fund_coord / coords[0])
            check = model.to_base(e_op.evaluate(witness))
            if top.class_of(base_cx.element_vector(check - fund, m))[0] != 0:
                raise FundamentalClassError("witness verification failed")
            return witness
    raise FundamentalClassError(
        f"no cocycle in word-length 1, degree {degree} hits the fundamental"
        f" class under e_theta; duality check FAILED"
    )
