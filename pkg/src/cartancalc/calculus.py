"""Homotopy (pre-)Cartan calculi as checkable predicates.

A wiring consists of a dg Lie algebra g of derivations, target operators
e, L, S (and optionally a two-argument homotopy T) into an operator space
carrying two anti-commuting differentials d_H = [d, -] and B_H = [B, -].
The defining equalities of a homotopy pre-Cartan calculus are

    (1)  L_t = B_H(e_t) + d_H(S_t) + S_{delta t}
    (2)  d_H(e_t) + e_{delta t} = 0
    (3)  B_H(S_t) = 0

and a homotopy Cartan calculus additionally satisfies

    (4)  [e_t, L_r] - e_{[t,r]} = d_H(T_{t,r}) - T_{delta t, r}
                                   - (-1)^{deg t} T_{t, delta r}
    (5)  [S_t, L_r] - S_{[t,r]} = B_H(T_{t,r}).

Operator equalities are verified exactly on caller-supplied probe inputs
(generators suffice for derivation-valued wirings; basis words otherwise).
Two wirings are provided: the loop model with S = T = 0, and the Hochschild
chain complex with its S homotopy and T = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

from .derivations import Derivation
from .gca import Element
from .hochschild import Chain, connes_B, hh_L, hh_S, hh_e, hochschild_d
from .loop import LoopModel


@dataclass(frozen=True)
class GradedOp:
    """A linear operator with a remembered (cohomological) degree."""

    fn: Callable
    degree: int

    def __call__(self, x):
        return self.fn(x)

    def __add__(self, other: "GradedOp") -> "GradedOp":
        return GradedOp(lambda x: self.fn(x) + other.fn(x), self.degree)

    def __sub__(self, other: "GradedOp") -> "GradedOp":
        return GradedOp(lambda x: self.fn(x) - other.fn(x), self.degree)

    def __neg__(self) -> "GradedOp":
        return GradedOp(lambda x: -self.fn(x), self.degree)

    def scale(self, c) -> "GradedOp":
        return GradedOp(lambda x: self.fn(x).scale(c), self.degree)


def commutator(f: GradedOp, g: GradedOp) -> GradedOp:
    """[f, g] = f g - (-1)^{|f||g|} g f."""
    sign = -1 if (f.degree * g.degree) % 2 else 1
    if sign == 1:
        return GradedOp(lambda x: f.fn(g.fn(x)) - g.fn(f.fn(x)), f.degree + g.degree)
    return GradedOp(lambda x: f.fn(g.fn(x)) + g.fn(f.fn(x)), f.degree + g.degree)


@dataclass
class Wiring:
    """One homotopy Cartan calculus candidate hooked to concrete data."""

    name: str
    e: Callable[[Derivation], GradedOp]
    L: Callable[[Derivation], GradedOp]
    S: Callable[[Derivation], GradedOp]
    T: Optional[Callable[[Derivation, Derivation], GradedOp]]
    delta: Callable[[Derivation], Derivation]
    bracket: Callable[[Derivation, Derivation], Derivation]
    d_H: Callable[[GradedOp], GradedOp]
    B_H: Callable[[GradedOp], GradedOp]
    zero: Callable[[], object]  # zero of the underlying complex


@dataclass
class Violation:
    identity: str
    probe: str
    lhs: str
    rhs: str

    def __str__(self):
        return f"{self.identity} fails on {self.probe}: {self.lhs} != {self.rhs}"


def _expect(violations: List[Violation], identity: str, probe, lhs, rhs):
    if lhs != rhs:
        violations.append(Violation(identity, str(probe), str(lhs), str(rhs)))


def check_pre_cartan(w: Wiring, theta: Derivation, probes: Sequence) -> List[Violation]:
    out: List[Violation] = []
    e_t, L_t, S_t = w.e(theta), w.L(theta), w.S(theta)
    S_dt = w.S(w.delta(theta))
    rhs1 = w.B_H(e_t) + w.d_H(S_t) + S_dt
    e_dt = w.e(w.delta(theta))
    lhs2 = w.d_H(e_t) + e_dt
    rhs3 = w.B_H(S_t)
    for p in probes:
        _expect(out, "L = [B,e] + [d,S] + S_delta", p, L_t(p), rhs1(p))
        _expect(out, "[d,e] + e_delta = 0", p, lhs2(p), w.zero())
        _expect(out, "[B,S] = 0", p, rhs3(p), w.zero())
    return out


def check_cartan(
    w: Wiring, theta: Derivation, rho: Derivation, probes: Sequence
) -> List[Violation]:
    out: List[Violation] = []
    lhs4 = commutator(w.e(theta), w.L(rho)) - w.e(w.bracket(theta, rho))
    lhs5 = commutator(w.S(theta), w.L(rho)) - w.S(w.bracket(theta, rho))
    if w.T is None:
        rhs4 = rhs5 = None
    else:
        sign = -1 if theta.degree % 2 else 1
        rhs4 = (
            w.d_H(w.T(theta, rho))
            - w.T(w.delta(theta), rho)
            - w.T(theta, w.delta(rho)).scale(sign)
        )
        rhs5 = w.B_H(w.T(theta, rho))
    for p in probes:
        _expect(out, "[e,L] = e_bracket (mod T)", p, lhs4(p), rhs4(p) if rhs4 else w.zero())
        _expect(out, "[S,L] = S_bracket (mod T)", p, lhs5(p), rhs5(p) if rhs5 else w.zero())
    return out


def check_all(w, theta, rho, probes):
    return check_pre_cartan(w, theta, probes) + check_cartan(w, theta, rho, probes)


# -- concrete wirings --------------------------------------------------------


def loop_wiring(model: LoopModel) -> Wiring:
    """(Der(base), Der(L), e, L, S=0, T=0) on the mixed algebra (L, d, s)."""
    ext = model.ext

    def as_op(der: Derivation) -> GradedOp:
        return GradedOp(der.evaluate, der.degree)

    d_op = GradedOp(ext.d, 1)
    s_op = GradedOp(model.s.evaluate, -1)

    return Wiring(
        name="loop-model",
        e=lambda t: as_op(model.op_e(t)),
        L=lambda t: as_op(model.op_L(t)),
        S=lambda t: GradedOp(lambda x: ext.zero(), t.degree - 1),
        T=None,
        delta=lambda t: t.differential(),
        bracket=lambda t, r: t.bracket(r),
        d_H=lambda f: commutator(d_op, f),
        B_H=lambda f: commutator(s_op, f),
        zero=ext.zero,
    )


def hochschild_wiring(alg) -> Wiring:
    """(Der(A), End(C(A)), e, L, S, T=0) on the Hochschild mixed complex."""

    def zero() -> Chain:
        return Chain(alg, {})

    d_op = GradedOp(hochschild_d, 1)
    B_op = GradedOp(connes_B, -1)

    return Wiring(
        name="hochschild",
        e=lambda t: GradedOp(lambda c: hh_e(t, c), t.degree + 1),
        L=lambda t: GradedOp(lambda c: hh_L(t, c), t.degree),
        S=lambda t: GradedOp(lambda c: hh_S(t, c), t.degree - 1),
        T=None,
        delta=lambda t: t.differential(),
        bracket=lambda t, r: t.bracket(r),
        d_H=lambda f: commutator(d_op, f),
        B_H=lambda f: commutator(B_op, f),
        zero=zero,
    )
