"""Quotient of a surface pure braid group by its Artin generators.

Killing the Artin generators of the band (the strands carrying a disc braid
group) should leave a direct power of the surface group.  The isomorphism is
certified with two explicit homomorphisms: ``phi`` from the quotient to the
direct power and ``psi`` back, both checked well-defined and mutually inverse
on generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import ClosedSurfaceUnsupported, Exhausted, InvalidParams
from .families import (
    NONORIENTABLE,
    SPHERE,
    SurfaceSpec,
    artin_band,
    artin_generator_set,
    braid_presentation,
    direct_power_presentation,
    power_symbol,
    surface_group,
)
from .presentations import (
    DirectPowerOfFree,
    GroupHom,
    HomCertificate,
    Presentation,
    RewriteSystemStrategy,
    check_hom,
    compose,
)
from .rewrite import Budget, kb_complete
from .words import Plain, Rho, A, Symbol, Word, commutator_shape, render, substitute_kill

VERIFIED = "Verified"
UNVERIFIED = "Unverified"
REFUTED = "Refuted"


def _spec(family: str, g: int, p: int) -> SurfaceSpec:
    return SurfaceSpec(family != NONORIENTABLE, g, p)


def _check_params(family: str, g: int, p: int, n: int):
    if p == 0:
        raise ClosedSurfaceUnsupported("closed surfaces (p = 0) are not supported")
    artin_generator_set(family, g, p, n)  # validates


def quotient_of(family: str, g: int, p: int, n: int, braid: Presentation) -> Presentation:
    """Kill the Artin band of ``braid`` (which may be a modified presentation)."""
    killed = artin_generator_set(family, g, p, n)
    gens = [s for s in braid.generators if s not in killed]
    rels = [substitute_kill(r, killed) for r in braid.relators]
    kill = ",".join(str(s) for s in sorted(killed))
    return Presentation.make(gens, rels, f"{braid.provenance} / <<{kill}>>", dedupe=True)


def goldberg_quotient(family: str, g: int, p: int, n: int) -> Presentation:
    _check_params(family, g, p, n)
    return quotient_of(family, g, p, n, braid_presentation(family, g, p, n))


@dataclass(frozen=True)
class SurvivorCensus:
    commutators: int
    other: Tuple[Word, ...]

    def to_json(self) -> dict:
        return {"commutators": self.commutators, "other": [render(w) for w in self.other]}


def survivors_census(q: Presentation) -> SurvivorCensus:
    other = tuple(r for r in q.relators if commutator_shape(r) is None)
    return SurvivorCensus(len(q.relators) - len(other), other)


def strand_order(generators) -> List[Symbol]:
    """Generators grouped by strand, then in natural order.

    Shortlex completion of the quotients converges quickly in this order,
    since each strand's generators form one factor of the direct power.
    """
    def strand(s: Symbol) -> int:
        if s.kind == "A":
            return s.idx[1]
        if s.kind == "rho":
            return s.idx[0]
        return 0

    return sorted(generators, key=lambda s: (strand(s), s.key))


# ---------------------------------------------------------------------------
# the two homomorphisms


def _factor(family: str, g: int, p: int, n: int, strand: int) -> int:
    lo, _ = artin_band(family, g, p, n)
    return strand - lo + 1


def _phi_images(family, g, p, n, q: Presentation) -> Dict[Symbol, Word]:
    images = {}
    for s in q.generators:
        if s.kind == "A":
            i, j = s.idx
            c = _factor(family, g, p, n, j)
            base = Plain("A", i) if family == NONORIENTABLE else Plain("x", i)
        else:
            r, k = s.idx
            c = _factor(family, g, p, n, r)
            base = Plain("rho", k)
        images[s] = Word.gen(power_symbol(base, c, n))
    return images


def _psi_images(family, g, p, n, target: Presentation) -> Dict[Symbol, Word]:
    lo, _ = artin_band(family, g, p, n)
    images = {}
    for s in target.generators:
        strand = lo + (s.copy or 1) - 1
        (i,) = s.idx
        images[s] = Word.gen(Rho(strand, i) if s.name == "rho" else A(i, strand))
    return images


def target_strategy(family: str, g: int, p: int, n: int, target: Presentation) -> DirectPowerOfFree:
    """Word problem in the direct power, making each factor free first.

    In a non-orientable factor the relation ``rho_1^2 ... rho_g^2 = A_1 ... A_p``
    eliminates ``A_p = (A_1 ... A_{p-1})^-1 rho_1^2 ... rho_g^2``.
    """
    factor_of, elim = {}, {}
    for c in range(1, n + 1):
        sym = lambda base: power_symbol(base, c, n)
        if family == NONORIENTABLE:
            rest = Word()
            for i in range(1, p):
                rest = rest * Word.gen(sym(Plain("A", i)))
            squares = Word()
            for l in range(1, g + 1):
                squares = squares * Word.gen(sym(Plain("rho", l)), 2)
            elim[sym(Plain("A", p))] = rest.inverse() * squares
            free = [Plain("A", i) for i in range(1, p)] + [Plain("rho", l) for l in range(1, g + 1)]
        else:
            free = [Plain("x", i) for i in range(1, 2 * g + p)]
        for base in free:
            factor_of[sym(base)] = c
    return DirectPowerOfFree(factor_of, elim)


@dataclass(frozen=True)
class GoldbergCertificate:
    params: Tuple[str, int, int, int]
    quotient: Presentation
    target: Presentation
    phi: GroupHom
    psi: GroupHom
    status: str
    reason: Optional[str] = None
    witness: Optional[Word] = None
    phi_check: Optional[HomCertificate] = None
    psi_check: Optional[HomCertificate] = None
    composites_ok: Optional[bool] = None
    rules: int = 0

    def invariant_holds(self) -> bool:
        """Verified only with both maps well-defined and both composites trivial."""
        if self.status != VERIFIED:
            return True
        return bool(
            self.phi_check and self.phi_check.well_defined
            and self.psi_check and self.psi_check.well_defined
            and self.composites_ok
        )

    def to_json(self) -> dict:
        family, g, p, n = self.params
        return {
            "params": {"family": family, "g": g, "p": p, "n": n},
            "status": self.status,
            "reason": self.reason,
            "witness": render(self.witness) if self.witness is not None else None,
            "quotient": self.quotient.to_json(),
            "target": self.target.to_json(),
            "phi": {"map": self.phi.to_json(),
                    "check": self.phi_check.to_json() if self.phi_check else None},
            "psi": {"map": self.psi.to_json(),
                    "check": self.psi_check.to_json() if self.psi_check else None},
            "composites_fix_generators": self.composites_ok,
            "rewrite_rules": self.rules,
        }


def verify_goldberg(
    family: str,
    g: int,
    p: int,
    n: int,
    budget: Budget = Budget(),
    presentation: Optional[Presentation] = None,
) -> GoldbergCertificate:
    """Certify ``P_n(S) / <<Artin generators>>`` is the n-th direct power of ``pi_1(S)``.

    ``presentation`` replaces the braid presentation (used to test that a
    broken input is never certified).
    """
    _check_params(family, g, p, n)
    braid = presentation if presentation is not None else braid_presentation(family, g, p, n)
    q = quotient_of(family, g, p, n, braid)
    target = direct_power_presentation(surface_group(_spec(family, g, p)), n)
    phi = GroupHom(q, target, _phi_images(family, g, p, n, q))
    psi = GroupHom(target, q, _psi_images(family, g, p, n, target))
    cert = dict(params=(family, g, p, n), quotient=q, target=target, phi=phi, psi=psi)

    tstrat = target_strategy(family, g, p, n, target)
    phi_check = check_hom(phi, tstrat)
    if not phi_check.well_defined:
        return GoldbergCertificate(**cert, status=REFUTED, reason="phi not well-defined",
                                   witness=phi_check.failing_relator, phi_check=phi_check)
    try:
        rs = kb_complete(q.relators, budget, generators=q.generators,
                         order=strand_order(q.generators))
    except Exhausted as exc:
        return GoldbergCertificate(**cert, status=UNVERIFIED, reason=f"kb budget: {exc}",
                                   phi_check=phi_check)
    qstrat = RewriteSystemStrategy(rs)
    psi_check = check_hom(psi, qstrat)
    if not psi_check.well_defined:
        return GoldbergCertificate(**cert, status=REFUTED, reason="psi not well-defined",
                                   witness=psi_check.failing_relator, phi_check=phi_check,
                                   psi_check=psi_check, rules=len(rs.rules))
    rest = dict(phi_check=phi_check, psi_check=psi_check, rules=len(rs.rules))
    for h, strat, name in ((compose(psi, phi), tstrat, "phi.psi"),
                           (compose(phi, psi), qstrat, "psi.phi")):
        for s in h.source.generators:
            if not strat.equal(h.images[s], Word.gen(s)):
                return GoldbergCertificate(
                    **cert, status=REFUTED, reason=f"{name} moves {s}",
                    witness=Word.gen(s) * h.images[s].inverse(), composites_ok=False, **rest)
    return GoldbergCertificate(**cert, status=VERIFIED, composites_ok=True, **rest)


GRID = (
    [(SPHERE, 0, p, n) for p in (1, 2, 3, 4) for n in (1, 2, 3)]
    + [("orientable", g, p, n) for g in (1, 2) for p in (1, 2) for n in (1, 2)]
    + [(NONORIENTABLE, g, p, n) for g in (1, 2) for p in (1, 2) for n in (1, 2)]
)
