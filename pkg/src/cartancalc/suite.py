"""Randomized identity suites: the whole calculus checked on one algebra.

For a presentation A with loop model L the suite verifies, exactly:

  * mixed-complex axioms d^2 = s^2 = ds + sd = 0 on L (on generators, which
    determines the derivations globally) and d^2 = B^2 = dB + Bd = 0 on the
    Hochschild complex, wordwise up to the degree cap;
  * per randomized trial (theta, rho): the loop-model calculus identities
    L = [s,e], [d,e] + e_delta = 0, [e,L] = e_bracket on all generators;
    the five Hochschild calculus identities on sampled basis words; the two
    comparison squares Theta L = L Theta and Theta e Theta' = e; and
    Theta(Theta'(m)) = m on loop monomials.

Every check is an equality of exact rational objects; there are no
tolerances anywhere.
"""

from __future__ import annotations

import random
from typing import List, Optional

from .calculus import check_all, hochschild_wiring, loop_wiring
from .errors import SimplyConnectedError
from .gca import Algebra
from .hochschild import (
    Chain,
    HochschildComplex,
    connes_B,
    hh_L,
    hh_e,
    hochschild_d,
    theta_map,
    theta_prime,
    word_chain,
    word_str,
)
from .loop import LoopModel
from .randomgen import random_derivation
from .results import CheckReport, CheckRow


def _word_pool(hc: HochschildComplex, max_degree: int, cap: int = 4000):
    words = []
    for n in range(max_degree + 1):
        words.extend(hc.basis(n))
        if len(words) > cap:
            break
    return words[:cap]


def run_identity_suite(
    alg: Algebra,
    max_degree: int = 12,
    trials: int = 25,
    seed: int = 0,
    probe_words: int = 12,
    title: Optional[str] = None,
) -> CheckReport:
    rng = random.Random(seed)
    rows: List[CheckRow] = []
    model = LoopModel(alg)
    ext = model.ext
    hc = HochschildComplex(alg)
    words = _word_pool(hc, max_degree)
    loop_probes = [ext.gen(g.name) for g in ext.generators]

    # mixed-complex axioms
    ok = all(ext.d(ext.d(v)).is_zero() for v in loop_probes)
    s = model.s
    ok &= all(s.evaluate(s.evaluate(v)).is_zero() for v in loop_probes)
    ok &= all(
        (ext.d(s.evaluate(v)) + s.evaluate(ext.d(v))).is_zero() for v in loop_probes
    )
    rows.append(CheckRow("loop model: d^2 = s^2 = ds + sd = 0", ok))

    bad = ""
    for w in words:
        c = word_chain(alg, w[0], w[1])
        if not hochschild_d(hochschild_d(c)).is_zero():
            bad = f"d^2 != 0 on {word_str(alg, w)}"
            break
        if not connes_B(connes_B(c)).is_zero():
            bad = f"B^2 != 0 on {word_str(alg, w)}"
            break
        if not (hochschild_d(connes_B(c)) + connes_B(hochschild_d(c))).is_zero():
            bad = f"dB + Bd != 0 on {word_str(alg, w)}"
            break
    rows.append(
        CheckRow(
            f"hochschild: d^2 = B^2 = dB + Bd = 0 on {len(words)} words",
            not bad,
            bad,
        )
    )

    wire_loop = loop_wiring(model)
    wire_hh = hochschild_wiring(alg)
    loop_viol = hh_viol = square_viol = section_viol = ""
    for trial in range(trials):
        theta = random_derivation(alg, rng)
        rho = random_derivation(alg, rng)
        if not loop_viol:
            v = check_all(wire_loop, theta, rho, loop_probes)
            if v:
                loop_viol = f"trial {trial}: {v[0]}"
        if not hh_viol and words:
            sample = [
                word_chain(alg, w[0], w[1])
                for w in rng.sample(words, min(probe_words, len(words)))
            ]
            v = check_all(wire_hh, theta, rho, sample)
            if v:
                hh_viol = f"trial {trial}: {v[0]}"
        if not square_viol and words:
            for w in rng.sample(words, min(probe_words, len(words))):
                c = word_chain(alg, w[0], w[1])
                if theta_map(model, hh_L(theta, c)) != model.op_L(theta)(
                    theta_map(model, c)
                ):
                    square_viol = f"trial {trial}: L square on {word_str(alg, w)}"
                    break
        if not section_viol:
            n = rng.randrange(0, max_degree + 1)
            basis = ext.basis_of_degree(n)
            for m in (basis[rng.randrange(len(basis))],) if basis else ():
                elt = ext.monomial(m)
                if theta_map(model, theta_prime(model, elt)) != elt:
                    section_viol = f"trial {trial}: Theta Theta' != 1 on {ext.mono_str(m)}"
                    break
                if theta_map(model, hh_e(theta, theta_prime(model, elt))) != model.op_e(
                    theta
                )(elt):
                    section_viol = f"trial {trial}: e square on {ext.mono_str(m)}"
                    break
    rows.append(
        CheckRow(
            f"loop calculus identities (L=[s,e]; [d,e]+e_delta=0; [e,L]=e_[,]),"
            f" {trials} trials",
            not loop_viol,
            loop_viol,
        )
    )
    rows.append(
        CheckRow(
            f"hochschild calculus identities (i)-(v), {trials} trials",
            not hh_viol,
            hh_viol,
        )
    )
    rows.append(
        CheckRow(
            f"comparison square Theta L = L Theta, {trials} trials",
            not square_viol,
            square_viol,
        )
    )
    rows.append(
        CheckRow(
            f"Theta Theta' = 1 and Theta e Theta' = e, {trials} trials",
            not section_viol,
            section_viol,
        )
    )
    return CheckReport(title or "identity suite", rows)
