"""The dg Lie algebra of derivations of a free graded-commutative algebra.

A derivation of (cohomological) degree t is stored by its values on
generators and Leibniz-extended on demand:

    theta(ab) = theta(a) b + (-1)^{t|a|} a theta(b).

``Der(A)`` carries the bracket [f, g] = f g - (-1)^{|f||g|} g f and the
differential [d, -],  [d, theta] = d theta - (-1)^{|theta|} theta d.
Derivations may also target a module over the domain presented by another
algebra together with an embedding of monomials (used for the inclusion of
a base algebra into its loop model); bracket and [d, -] then still make
sense with the codomain differential, but bracketing two proper-module
derivations is refused.

Homology is reported in homological degrees, H_n(Der) = H^{-n}(Der), which
is the convention used for all user-facing tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Optional

from .errors import CodomainError, DegreeError, PresentationMismatchError
from .gca import Algebra, Element, Mono
from .homology import CohomologySpace, Complex


class Derivation:
    """A degree-homogeneous derivation, given by its generator values."""

    __slots__ = ("domain", "codomain", "embed", "degree", "values")

    def __init__(
        self,
        domain: Algebra,
        degree: int,
        values: Mapping[str, Element],
        codomain: Optional[Algebra] = None,
        embed: Optional[Callable[[Mono], Mono]] = None,
    ):
        self.domain = domain
        self.codomain = codomain or domain
        self.embed = embed
        self.degree = degree
        vals: Dict[str, Element] = {}
        for name, val in values.items():
            if name not in domain.index:
                raise DegreeError(f"value for unknown generator {name}")
            if val.is_zero():
                continue
            want = domain.degrees[domain.index[name]] + degree
            if val.degree() != want:
                raise DegreeError(
                    f"value for {name} must be homogeneous of degree {want},"
                    f" got {val}"
                )
            vals[name] = val
        self.values = vals

    # -- basics -----------------------------------------------------------

    def is_endomorphism(self) -> bool:
        return self.codomain is self.domain and self.embed is None

    def value(self, name: str) -> Element:
        return self.values.get(name, self.codomain.zero())

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (
            self.domain.same_presentation(other.domain)
            and self.degree == other.degree
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.degree, frozenset(self.values.items())))

    def __call__(self, e: Element) -> Element:
        return self.evaluate(e)

    def evaluate(self, e: Element) -> Element:
        if not self.domain._owns(e):
            raise PresentationMismatchError(
                "derivation applied to an element of another presentation"
            )
        idx_values = {
            self.domain.index[name]: v for name, v in self.values.items()
        }
        out = self.codomain.zero()
        for m, c in e.terms.items():
            out = out + c * self.domain.apply_derivation(
                self.degree, idx_values, m, codomain=self.codomain, embed=self.embed
            )
        return out

    # -- linear structure ---------------------------------------------------

    def _merge(self, other: "Derivation", sign: int) -> "Derivation":
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise DegreeError("sum of derivations of different degrees")
        vals: Dict[str, Element] = dict(self.values)
        for name, v in other.values.items():
            s = vals.get(name, self.codomain.zero()) + v.scale(sign)
            if s.is_zero():
                vals.pop(name, None)
            else:
                vals[name] = s
        deg = self.degree if not self.is_zero() else other.degree
        return Derivation(self.domain, deg, vals, self.codomain, self.embed)

    def __add__(self, other: "Derivation") -> "Derivation":
        return self._merge(other, 1)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self._merge(other, -1)

    def scale(self, c) -> "Derivation":
        c = Fraction(c)
        return Derivation(
            self.domain,
            self.degree,
            {n: v.scale(c) for n, v in self.values.items()},
            self.codomain,
            self.embed,
        )

    def __neg__(self) -> "Derivation":
        return self.scale(-1)

    # -- Lie structure ------------------------------------------------------

    def bracket(self, other: "Derivation") -> "Derivation":
        """[f, g] = f g - (-1)^{|f||g|} g f, again a derivation."""
        if not (self.is_endomorphism() and other.is_endomorphism()):
            raise CodomainError("bracket requires endomorphism derivations")
        if not self.domain.same_presentation(other.domain):
            raise PresentationMismatchError("derivations on different algebras")
        sign = -1 if (self.degree * other.degree) % 2 else 1
        vals: Dict[str, Element] = {}
        for g in self.domain.generators:
            v = self.evaluate(other.value(g.name)) - other.evaluate(
                self.value(g.name)
            ).scale(sign)
            if not v.is_zero():
                vals[g.name] = v
        return Derivation(self.domain, self.degree + other.degree, vals)

    def differential(self) -> "Derivation":
        """[d, theta] = d theta - (-1)^{|theta|} theta d (degree +1)."""
        cod = self.codomain
        sign = -1 if self.degree % 2 else 1
        vals: Dict[str, Element] = {}
        for i, g in enumerate(self.domain.generators):
            dg = self.domain.differential[i]
            v = cod.d(self.value(g.name)) - self.evaluate(dg).scale(sign)
            if not v.is_zero():
                vals[g.name] = v
        return Derivation(self.domain, self.degree + 1, vals, cod, self.embed)

    def is_cocycle(self) -> bool:
        return self.differential().is_zero()

    def __str__(self) -> str:
        if not self.values:
            return "0"
        parts = [f"({name} -> {val})" for name, val in sorted(self.values.items())]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Derivation[deg {self.degree}]({self})"


def derivation(alg: Algebra, pairs: Mapping[str, Element], degree=None) -> Derivation:
    """Convenience builder; the degree is inferred from any nonzero value
    when not given (the paper-style ``(v, a)`` notation)."""
    if degree is None:
        for name, val in pairs.items():
            if not val.is_zero():
                degree = val.degree() - alg.degrees[alg.index[name]]
                break
        else:
            raise DegreeError("cannot infer the degree of the zero derivation")
    return Derivation(alg, degree, pairs)


class DerComplex(Complex):
    """Der(A) with differential [d, -]; basis elements in cohomological
    degree t are the single-value derivations (g, w) with |w| = |g| + t."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self._basis_cache: dict = {}

    def basis(self, t: int):
        if t not in self._basis_cache:
            out = []
            for i, g in enumerate(self.alg.generators):
                for w in self.alg.basis_of_degree(g.degree + t):
                    out.append((i, w))
            self._basis_cache[t] = tuple(out)
        return self._basis_cache[t]

    def label(self, obj) -> str:
        i, w = obj
        return f"({self.alg.generators[i].name},{self.alg.mono_str(w)})"

    def to_derivation(self, obj, coeff=1) -> Derivation:
        i, w = obj
        g = self.alg.generators[i]
        return Derivation(
            self.alg,
            self.alg.mono_degree(w) - g.degree,
            {g.name: self.alg.monomial(w, coeff)},
        )

    def from_vector(self, t: int, vec) -> Derivation:
        basis = self.basis(t)
        out = Derivation(self.alg, t, {})
        for j, c in vec.items():
            out = out + self.to_derivation(basis[j], c)
        return out

    def vector_of(self, theta: Derivation):
        basis = self.basis(theta.degree)
        idx = {obj: i for i, obj in enumerate(basis)}
        out = {}
        for name, val in theta.values.items():
            i = theta.domain.index[name]
            for m, c in val.terms.items():
                out[idx[(i, m)]] = c
        return out

    def differential(self, obj):
        dtheta = self.to_derivation(obj).differential()
        out = []
        for name, val in dtheta.values.items():
            i = self.alg.index[name]
            for m, c in val.terms.items():
                out.append((c, (i, m)))
        return out


def der_homology(alg: Algebra, n: int) -> CohomologySpace:
    """H_n(Der(A)) = H^{-n}(Der(A), [d, -]), with derivation representatives
    recoverable through DerComplex.from_vector."""
    return DerComplex(alg).cohomology(-n)


def lambda_iso(theta: Derivation) -> Dict[str, Element]:
    """The degree-1 isomorphism onto Hom(V-bar, A):

        lambda(theta)(v_bar) = (-1)^{|theta|} theta(v).

    Returned as a map from base generator names to values.  The inverse is
    :func:`lambda_inv`.  Under the induced differentials one has
    D(lambda(theta)) = - lambda([d, theta]) for every theta (lambda
    anti-commutes with the differentials); the sign is fixed by this
    implementation and pinned down in the test-suite.  Either sign gives
    the same induced isomorphism of graded cohomology spaces.
    """
    sign = -1 if theta.degree % 2 else 1
    return {
        g.name: theta.value(g.name).scale(sign) for g in theta.domain.generators
    }


def lambda_inv(alg: Algebra, mapping: Mapping[str, Element], hom_degree: int) -> Derivation:
    """Inverse of :func:`lambda_iso`; hom_degree is |lambda(theta)| = |theta| + 1."""
    degree = hom_degree - 1
    sign = -1 if degree % 2 else 1
    return Derivation(
        alg, degree, {name: v.scale(sign) for name, v in mapping.items()}
    )
