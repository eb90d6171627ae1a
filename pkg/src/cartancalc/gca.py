"""Exact arithmetic in free graded-commutative algebras over Q.

An algebra is presented by an ordered list of generators, each with a
cohomological degree >= 1.  Monomials are exponent tuples in declaration
order; any odd-degree generator squares to zero, so its exponent is 0 or 1.
Elements are finite Q-linear combinations of normalized monomials with
``fractions.Fraction`` coefficients -- no floating point anywhere.

Sign conventions.  Transposing homogeneous symbols a, b costs the Koszul
sign (-1)^{|a||b|}; multiplying two normalized monomials therefore picks up
(-1)^k where k counts the odd-odd transpositions needed to merge them.  A
derivation of degree t is extended over products by

    theta(ab) = theta(a) b + (-1)^{t |a|} a theta(b),

and the differential of a presentation is the degree +1 derivation given by
its values on generators (d*d = 0 is checked at construction).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import DegreeError, PresentationError, PresentationMismatchError

Mono = tuple  # exponent tuple, one entry per generator
Scalar = Fraction


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


class Algebra:
    """A free graded-commutative algebra with a fixed differential.

    Construct with the generator list, build elements, then freeze the
    differential with :meth:`set_differential` (defaults to zero).  After
    that the presentation is immutable and safe to share across threads.
    """

    def __init__(self, generators: Sequence[Generator]):
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise PresentationError(f"duplicate generator names in {names}")
        for g in gens:
            if g.degree < 1:
                raise PresentationError(
                    f"generator {g.name} has degree {g.degree}; degrees must be >= 1"
                )
        self.generators = gens
        self.index = {g.name: i for i, g in enumerate(gens)}
        self.degrees = tuple(g.degree for g in gens)
        self.odd = tuple(g.degree % 2 == 1 for g in gens)
        self.unit_mono: Mono = (0,) * len(gens)
        self._differential: Optional[tuple] = None
        self._basis_cache: dict = {}
        self._deg_cache: dict = {}
        self._d_mono_cache: dict = {}
        self._d_values: dict = {}

    # -- construction ---------------------------------------------------

    @classmethod
    def free(cls, gens: Iterable[tuple]) -> "Algebra":
        return cls([Generator(name, deg) for name, deg in gens])

    def set_differential(self, values: Mapping[str, "Element"]) -> "Algebra":
        """Freeze the differential from generator values; checks d*d = 0."""
        if self._differential is not None:
            raise PresentationError("differential already set")
        diff = [self.zero()] * len(self.generators)
        for name, val in values.items():
            if name not in self.index:
                raise PresentationError(f"differential given for unknown generator {name}")
            if not self._owns(val):
                raise PresentationMismatchError(
                    f"differential value for {name} lives in a different presentation"
                )
            i = self.index[name]
            want = self.degrees[i] + 1
            if not val.is_zero() and val.degree() != want:
                raise DegreeError(
                    f"d({name}) must be homogeneous of degree {want}, got {val!r}"
                )
            diff[i] = val
        self._differential = tuple(diff)
        self._d_values = {i: v for i, v in enumerate(diff) if not v.is_zero()}
        for i, g in enumerate(self.generators):
            dd = self.d(diff[i])
            if not dd.is_zero():
                self._differential = None
                self._d_values = {}
                self._d_mono_cache.clear()
                raise PresentationError(
                    f"d(d({g.name})) = {dd} is nonzero; not a differential"
                )
        return self

    @property
    def differential(self) -> tuple:
        if self._differential is None:
            self.set_differential({})
        return self._differential

    def same_presentation(self, other: "Algebra") -> bool:
        if self is other:
            return True
        if self.generators != other.generators:
            return False
        return [v.terms for v in self.differential] == [
            v.terms for v in other.differential
        ]

    def _owns(self, e: "Element") -> bool:
        return e.alg is self or self.same_presentation(e.alg)

    # -- monomials --------------------------------------------------------

    def mono_degree(self, m: Mono) -> int:
        deg = self._deg_cache.get(m)
        if deg is None:
            deg = sum(e * d for e, d in zip(m, self.degrees))
            self._deg_cache[m] = deg
        return deg

    def mono_mul(self, m1: Mono, m2: Mono):
        """Product of normalized monomials: (sign, mono), or None if zero."""
        sign = 1
        # crossings: each odd letter of m2 moves left past the odd letters
        # of m1 with larger generator index
        odd_m1 = [i for i, e in enumerate(m1) if e and self.odd[i]]
        for i, e in enumerate(m2):
            if not e or not self.odd[i]:
                continue
            if m1[i]:
                return None  # odd square
            crossings = sum(1 for j in odd_m1 if j > i)
            if crossings % 2:
                sign = -sign
        return sign, tuple(a + b for a, b in zip(m1, m2))

    def mono_str(self, m: Mono) -> str:
        if not any(m):
            return "1"
        parts = []
        for i, e in enumerate(m):
            if e == 1:
                parts.append(self.generators[i].name)
            elif e > 1:
                parts.append(f"{self.generators[i].name}^{e}")
        return "*".join(parts)

    def basis_of_degree(self, n: int) -> tuple:
        """All normalized monomials of total degree n, in monomial order.

        Monomial order: exponent tuples compared lexicographically in
        generator declaration order.  Finite because every degree is >= 1.
        """
        if n < 0:
            return ()
        cached = self._basis_cache.get(n)
        if cached is not None:
            return cached
        out = []

        def rec(i: int, remaining: int, prefix: list):
            if remaining == 0:
                out.append(tuple(prefix + [0] * (len(self.degrees) - i)))
                return
            if i == len(self.degrees):
                return
            top = remaining // self.degrees[i]
            if self.odd[i]:
                top = min(top, 1)
            for e in range(top + 1):
                rec(i + 1, remaining - e * self.degrees[i], prefix + [e])

        rec(0, n, [])
        out.sort()
        result = tuple(out)
        self._basis_cache[n] = result
        return result

    # -- elements -----------------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {self.unit_mono: Fraction(1)})

    def gen(self, name: str) -> "Element":
        i = self.index[name]
        m = [0] * len(self.generators)
        m[i] = 1
        return Element(self, {tuple(m): Fraction(1)})

    def gens(self) -> tuple:
        return tuple(self.gen(g.name) for g in self.generators)

    def element(self, terms: Mapping[Mono, Scalar]) -> "Element":
        return Element(self, {m: Fraction(c) for m, c in terms.items() if c})

    def monomial(self, m: Mono, coeff=1) -> "Element":
        return self.element({m: Fraction(coeff)})

    def augmentation(self, e: "Element") -> Fraction:
        """Projection killing every generator (coefficient of 1)."""
        return e.terms.get(self.unit_mono, Fraction(0))

    # -- derivations (Leibniz engine) -----------------------------------------

    def apply_derivation(
        self,
        degree: int,
        values: Mapping[int, "Element"],
        m: Mono,
        codomain: Optional["Algebra"] = None,
        embed: Optional[Callable[[Mono], Mono]] = None,
    ) -> "Element":
        """Leibniz extension of generator values to the monomial ``m``.

        ``values`` maps generator index -> Element of ``codomain`` (defaults
        to self).  ``embed`` maps monomials of self into codomain monomials
        (for presentations whose generators form a prefix of the codomain's).
        """
        cod = codomain or self
        emb = embed or (lambda mono: mono)
        out = cod.zero()
        prefix_deg = 0
        for i, e in enumerate(m):
            if e:
                val = values.get(i)
                if val is not None and not val.is_zero():
                    left = list(m[:i]) + [e - 1] + [0] * (len(m) - i - 1)
                    right = [0] * (i + 1) + list(m[i + 1 :])
                    sign = -1 if (degree * prefix_deg) % 2 else 1
                    term = (
                        cod.monomial(emb(tuple(left)), e * sign)
                        * val
                        * cod.monomial(emb(tuple(right)))
                    )
                    out = out + term
                prefix_deg += e * self.degrees[i]
        return out

    def d_mono(self, m: Mono) -> dict:
        """Terms of d applied to a single monomial, cached."""
        cached = self._d_mono_cache.get(m)
        if cached is None:
            if self._differential is None:
                self.set_differential({})
            cached = self.apply_derivation(1, self._d_values, m).terms
            self._d_mono_cache[m] = cached
        return cached

    def d(self, e: "Element") -> "Element":
        """The differential, Leibniz-extended to any element."""
        if not self._owns(e):
            raise PresentationMismatchError("element from another presentation")
        terms: dict = {}
        for m, c in e.terms.items():
            for mm, cc in self.d_mono(m).items():
                s = terms.get(mm, Fraction(0)) + c * cc
                if s:
                    terms[mm] = s
                else:
                    terms.pop(mm, None)
        return Element(self, terms)


class Element:
    """A Q-linear combination of normalized monomials of one algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Common degree of all terms, None if inhomogeneous, 0 for zero."""
        degs = {self.alg.mono_degree(m) for m in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            return None
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.alg.mono_degree(m) for m in self.terms}) <= 1

    def homogeneous_part(self, n: int) -> "Element":
        return Element(
            self.alg,
            {m: c for m, c in self.terms.items() if self.alg.mono_degree(m) == n},
        )

    def _check(self, other: "Element"):
        if not (self.alg is other.alg or self.alg.same_presentation(other.alg)):
            raise PresentationMismatchError(
                "elements belong to different presentations"
            )

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Element(self.alg, terms)

    def __neg__(self) -> "Element":
        return Element(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sm = self.alg.mono_mul(m1, m2)
                if sm is None:
                    continue
                sign, m = sm
                c = terms.get(m, Fraction(0)) + sign * c1 * c2
                if c:
                    terms[m] = c
                else:
                    terms.pop(m, None)
        return Element(self.alg, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if not c:
            return self.alg.zero()
        return Element(self.alg, {m: c * x for m, x in self.terms.items()})

    def __truediv__(self, c):
        return self.scale(Fraction(1, 1) / Fraction(c))

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative power")
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        if not (self.alg is other.alg or self.alg.same_presentation(other.alg)):
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (self.alg.mono_degree(mc[0]), mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            ms = self.alg.mono_str(m)
            if ms == "1":
                frag = str(c)
            elif c == 1:
                frag = ms
            elif c == -1:
                frag = f"-{ms}"
            else:
                frag = f"{c}*{ms}"
            parts.append(frag)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"<{self}>"
