"""Gauge equivalence versus homotopy of Maurer-Cartan elements on the cone.

A homotopy is an MC^∞ element of the cone with coefficients in Ω_s = Q[s,ds]:
a triple (l(s,ds), n(s,ds), m(s,ds)) with l, n of degree 1 and m of degree 0,
stored as path elements (the form variable is printed as s).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .cone import (ConeTriple, EquivWitness, PairDiagram, PairMCWitness, failed_equations,
                   mc_pair_verify, pair_equiv_residuals, pair_equiv_verify, stabilizer_T)
from .elements import Element, bch_many, exp_ad
from .linf import mc_infinity_residual
from .paths import T, mc_path_decompose, mc_path_from_gauge, stabilizer_from_loop


class VerificationError(AssertionError):
    def __init__(self, stage: str, detail: str = ""):
        super().__init__(f"{stage}: {detail}" if detail else stage)
        self.stage = stage


@dataclass(frozen=True, eq=False)
class HomotopyPath:
    l: Element
    n: Element
    m: Element

    def as_cone(self) -> ConeTriple:
        return ConeTriple(self.l, self.n, self.m)

    def endpoint(self, a) -> PairMCWitness:
        return PairMCWitness(self.l.eval_at(a), self.n.eval_at(a), self.m.eval_at(a))

    def format(self) -> str:
        return f"({self.l.format('s')}, {self.n.format('s')}, {self.m.format('s')})"


def homotopy_residual(P: PairDiagram, path: HomotopyPath) -> ConeTriple:
    return mc_infinity_residual(P, path.as_cone())


def homotopy_verify(P: PairDiagram, path: HomotopyPath, w0: PairMCWitness = None,
                    w1: PairMCWitness = None) -> List[str]:
    """Failed checks (empty when the path is an MC^∞ element over Q[s,ds] with the given ends)."""
    out = []
    if homotopy_residual(P, path):
        out.append("MC^∞ equation over Q[s,ds]")
    if w0 is not None and path.endpoint(0) != w0:
        out.append("endpoint s = 0")
    if w1 is not None and path.endpoint(1) != w1:
        out.append("endpoint s = 1")
    return out


def gauge_to_homotopy(P: PairDiagram, w0: PairMCWitness, w1: PairMCWitness, ew: EquivWitness) -> HomotopyPath:
    """l̃ = e^{sa}*x0, ñ = e^{sb}*y0, m̃ = g(sb)•T(s)•m0•(−h(sa)) with T(s) = d(sc) + [g(y0), sc]."""
    if not pair_equiv_verify(P, w0, w1, ew):
        bad = [k for k, v in pair_equiv_residuals(P, w0, w1, ew).items() if v]
        raise VerificationError("equivalence", ", ".join(bad))
    sa, sb, sc = ew.a.form_multiply(T), ew.b.form_multiply(T), ew.c.form_multiply(T)
    l = mc_path_from_gauge(P.L, w0.x, sa)
    n = mc_path_from_gauge(P.N, w0.y, sb)
    Ts = stabilizer_T(P, w0.y, sc)
    m = bch_many(P.g(sb), Ts, w0.p, -P.h(sa))
    path = HomotopyPath(l, n, m)
    bad = homotopy_verify(P, path, w0, w1)
    if bad:
        raise VerificationError("homotopy", ", ".join(bad))
    return path


def homotopy_to_gauge(P: PairDiagram, path: HomotopyPath) -> EquivWitness:
    """(λ(1), ν(1), C') from a homotopy between its endpoints."""
    bad = homotopy_verify(P, path)
    if bad:
        raise VerificationError("input path", ", ".join(bad))
    w0, w1 = path.endpoint(0), path.endpoint(1)
    for w, which in ((w0, "s = 0"), (w1, "s = 1")):
        if not mc_pair_verify(P, w):
            raise VerificationError(f"endpoint {which}", ", ".join(failed_equations(P, w)))
    try:
        lam = mc_path_decompose(P.L, path.l)
        nu = mc_path_decompose(P.N, path.n)
    except AssertionError as exc:
        raise VerificationError("path decomposition", str(exc)) from exc
    mu = bch_many(path.m, P.h(lam), -w0.p, -P.g(nu))
    try:
        C = stabilizer_from_loop(P.M, P.g(path.n), mu)
    except (AssertionError, ValueError) as exc:
        raise VerificationError("stabilizer extraction", str(exc)) from exc
    nu1 = nu.eval_at(1)
    C_prime = exp_ad(-P.g(nu1), C)
    ew = EquivWitness(lam.eval_at(1), nu1, C_prime)
    if not pair_equiv_verify(P, w0, w1, ew):
        bad = [k for k, v in pair_equiv_residuals(P, w0, w1, ew).items() if v]
        raise VerificationError("equivalence", ", ".join(bad))
    return ew
