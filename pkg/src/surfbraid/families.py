"""Presentations of surface pure braid groups and surface groups.

Relators are generated by iterating over ordered pairs of generators (the
conjugating one first) and testing the side conditions of each relation
family as explicit predicates.  Each relator is stored as ``L * R**-1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Set, Tuple

from .errors import ClosedSurfaceUnsupported, InvalidParams
from .presentations import Presentation
from .words import A, Plain, Rho, Symbol, Word, commutator, substitute, word

SPHERE, ORIENTABLE, NONORIENTABLE = "sphere", "orientable", "nonorientable"
FAMILIES = (SPHERE, ORIENTABLE, NONORIENTABLE)


@dataclass(frozen=True)
class SurfaceSpec:
    orientable: bool
    g: int
    p: int

    def __post_init__(self):
        if self.g < 0 or self.p < 0:
            raise InvalidParams("genus and punctures must be >= 0")
        if not self.orientable and self.g < 1:
            raise InvalidParams("non-orientable surfaces need g >= 1")

    @property
    def family(self) -> str:
        if not self.orientable:
            return NONORIENTABLE
        return SPHERE if self.g == 0 else ORIENTABLE

    @property
    def euler_characteristic(self) -> int:
        return (2 - 2 * self.g if self.orientable else 2 - self.g) - self.p

    def label(self) -> str:
        if self.orientable:
            return f"Sigma_{self.g},{self.p}"
        return f"N_{self.g},{self.p}"

    def cli(self) -> str:
        if self.family == SPHERE:
            return f"sphere:{self.p}"
        return f"{'o' if self.orientable else 'n'}:{self.g},{self.p}"

    @classmethod
    def parse(cls, text: str) -> "SurfaceSpec":
        """Parse ``sphere:p``, ``o:g,p`` or ``n:g,p``."""
        m = re.fullmatch(r"\s*(sphere|o|n)\s*:\s*(\d+)\s*(?:,\s*(\d+))?\s*", text)
        if not m:
            raise InvalidParams(f"bad surface {text!r}; expected sphere:p, o:g,p or n:g,p")
        kind, a, b = m.groups()
        if kind == "sphere":
            if b is not None:
                raise InvalidParams("sphere takes a single puncture count")
            return cls(True, 0, int(a))
        if b is None:
            raise InvalidParams(f"{kind}: needs g,p")
        return cls(kind == "o", int(a), int(b))


def _check(cond: bool, msg: str):
    if not cond:
        raise InvalidParams(msg)


def _conj_relator(conj: Symbol, target: Symbol, rhs: Word) -> Word:
    """Relator for ``conj^-1 target conj = rhs``."""
    return word((conj, -1), target, conj) * rhs.inverse()


def _w(*spec) -> Word:
    return word(*spec)


def _ordered_pairs(gens: List[Symbol]) -> Iterator[Tuple[int, int, int, int]]:
    for c in gens:
        for t in gens:
            if c != t:
                yield c.idx + t.idx


# ---------------------------------------------------------------------------
# punctured sphere


def sphere_generators(p: int, n: int) -> List[Symbol]:
    return [A(i, j) for i in range(1, p + n - 1) for j in range(p, p + n) if i < j]


# Side conditions.  Arguments are (i, j, r, s) for conjugator A(i,j) acting on
# A(r,s); every family only concerns pairs with j < s.

def p1_holds(i, j, r, s):
    return (i < j < r < s) or (r < i < j < s)


def p2_holds(i, j, r, s):
    return r == j and i < j < s


def p3_holds(i, j, r, s):
    return r == i and i < j < s


def p4_holds(i, j, r, s):
    return i < r < j < s


def _rhs_p2(i, j, s):
    return _w(A(i, s), A(j, s), (A(i, s), -1))


def _rhs_p3(i, j, s):
    return _w(A(i, s), A(j, s), A(i, s), (A(j, s), -1), (A(i, s), -1))


def _rhs_p4(i, j, r, s):
    return _w(A(i, s), A(j, s), (A(i, s), -1), (A(j, s), -1), A(r, s),
              A(j, s), A(i, s), (A(j, s), -1), (A(i, s), -1))


def pure_braid_punctured_sphere(p: int, n: int) -> Presentation:
    _check(p >= 1 and n >= 1, f"sphere braid group needs p >= 1, n >= 1 (got p={p}, n={n})")
    gens = sphere_generators(p, n)
    rels: List[Word] = []
    for i, j, r, s in _ordered_pairs(gens):
        c, t = A(i, j), A(r, s)
        if p1_holds(i, j, r, s):
            rels.append(_conj_relator(c, t, Word.gen(t)))
        elif p2_holds(i, j, r, s):
            rels.append(_conj_relator(c, t, _rhs_p2(i, j, s)))
        elif p3_holds(i, j, r, s):
            rels.append(_conj_relator(c, t, _rhs_p3(i, j, s)))
        elif p4_holds(i, j, r, s):
            rels.append(_conj_relator(c, t, _rhs_p4(i, j, r, s)))
    return Presentation.make(gens, rels, f"sphere(p={p},n={n})")


# ---------------------------------------------------------------------------
# punctured orientable surfaces of genus g >= 1


def orientable_generators(g: int, p: int, n: int) -> List[Symbol]:
    m = 2 * g + p
    return [A(i, j) for i in range(1, m + n - 1) for j in range(m, m + n) if i < j]


def pr1_holds(g, i, j, r, s):
    return (
        (i < j < r < s)
        or (r + 1 < i < j < s)
        or (i == r + 1 and i < j < s and ((r % 2 == 0 and r < 2 * g) or r >= 2 * g))
    )


def pr4_holds(g, i, j, r, s):
    return (i + 1 < r < j < s) or (
        i + 1 == r and r < j < s and ((r % 2 == 1 and r < 2 * g) or r > 2 * g)
    )


def er1_holds(g, i, j, r, s):
    # conjugator is A(r+1, j)
    return i == r + 1 and r % 2 == 1 and r < 2 * g and r + 1 < j < s


def er2_holds(g, i, j, r, s):
    # conjugator is A(r-1, j)
    return i == r - 1 and r % 2 == 0 and r <= 2 * g and r - 1 < j < s


def _rhs_er1(r, j, s):
    return _w(A(r, s), A(r + 1, s), (A(j, s), -1), (A(r + 1, s), -1))


def _rhs_er2(r, j, s):
    return _w(A(r - 1, s), A(j, s), (A(r - 1, s), -1), A(r, s), A(j, s),
              A(r - 1, s), (A(j, s), -1), (A(r - 1, s), -1))


def orientable_relation_families(g: int, i: int, j: int, r: int, s: int) -> List[str]:
    """Names of the relation families whose side condition holds at (i,j,r,s)."""
    out = []
    if pr1_holds(g, i, j, r, s):
        out.append("PR1")
    if p2_holds(i, j, r, s):
        out.append("PR2")
    if p3_holds(i, j, r, s):
        out.append("PR3")
    if pr4_holds(g, i, j, r, s):
        out.append("PR4")
    if er1_holds(g, i, j, r, s):
        out.append("ER1")
    if er2_holds(g, i, j, r, s):
        out.append("ER2")
    return out


def pure_braid_orientable(g: int, p: int, n: int) -> Presentation:
    _check(g >= 1 and p >= 1 and n >= 1,
           f"orientable braid group needs g, p, n >= 1 (got g={g}, p={p}, n={n})")
    gens = orientable_generators(g, p, n)
    rels: List[Word] = []
    for i, j, r, s in _ordered_pairs(gens):
        c, t = A(i, j), A(r, s)
        for fam in orientable_relation_families(g, i, j, r, s):
            if fam == "PR1":
                rhs = Word.gen(t)
            elif fam == "PR2":
                rhs = _rhs_p2(i, j, s)
            elif fam == "PR3":
                rhs = _rhs_p3(i, j, s)
            elif fam == "PR4":
                rhs = _rhs_p4(i, j, r, s)
            elif fam == "ER1":
                rhs = _rhs_er1(r, j, s)
            else:
                rhs = _rhs_er2(r, j, s)
            rels.append(_conj_relator(c, t, rhs))
    return Presentation.make(gens, rels, f"orientable(g={g},p={p},n={n})")


# ---------------------------------------------------------------------------
# punctured non-orientable surfaces N_{g,p}


def nonorientable_generators(g: int, p: int, n: int) -> List[Symbol]:
    a = [A(i, j) for j in range(p + 1, p + n + 1) for i in range(1, j)]
    rho = [Rho(r, k) for r in range(p + 1, p + n + 1) for k in range(1, g + 1)]
    return sorted(a, key=lambda s: s.key) + rho


def _artin_type_rhs(r, s, i, j) -> Optional[Word]:
    """Right side of ``A(r,s) A(i,j) A(r,s)^-1 = ...`` (case split on s < j)."""
    if not s < j:
        return None
    if (i < r < s < j) or (r < s < i < j):
        return _w(A(i, j))
    if i == r < s < j:
        return _w((A(s, j), -1), A(i, j), A(s, j))
    if r < i == s < j:
        return _w((A(i, j), -1), (A(r, j), -1), A(i, j), A(r, j), A(i, j))
    if r < i < s < j:
        return _w((A(s, j), -1), (A(r, j), -1), A(s, j), A(r, j), A(i, j),
                  (A(r, j), -1), (A(s, j), -1), A(r, j), A(s, j))
    return None


def _rho_rho_rhs(i, k, j, l) -> Word:
    """Right side of ``rho(i,k) rho(j,l) rho(i,k)^-1 = ...`` for i < j."""
    if k < l:
        return _w(Rho(j, l))
    if k == l:
        return _w((Rho(j, k), -1), (A(i, j), -1), Rho(j, k), Rho(j, k))
    return _w((Rho(j, k), -1), (A(i, j), -1), Rho(j, k), (A(i, j), -1), Rho(j, l),
              A(i, j), (Rho(j, k), -1), A(i, j), Rho(j, k))


def _rho_a_rhs(k, l, i, j) -> Optional[Word]:
    """Right side of ``rho(k,l) A(i,j) rho(k,l)^-1 = ...`` for k != j."""
    if k < i or j < k:
        return _w(A(i, j))
    if k == i:
        return _w((Rho(j, l), -1), (A(i, j), -1), Rho(j, l))
    if i < k < j:
        return _w((Rho(j, l), -1), (A(k, j), -1), Rho(j, l), (A(k, j), -1), A(i, j),
                  A(k, j), (Rho(j, l), -1), A(k, j), Rho(j, l))
    return None


def _surface_relator(g: int, p: int, n: int, j: int) -> Word:
    lhs = _w(*[(Rho(j, l), 2) for l in range(1, g + 1)])
    rhs = _w(*[A(i, j) for i in range(1, j)], *[A(j, s) for s in range(j + 1, p + n + 1)])
    return lhs * rhs.inverse()


def pure_braid_nonorientable(g: int, p: int, n: int) -> Presentation:
    _check(g >= 1 and p >= 1 and n >= 1,
           f"non-orientable braid group needs g, p, n >= 1 (got g={g}, p={p}, n={n})")
    gens = nonorientable_generators(g, p, n)
    a_gens = [s for s in gens if s.kind == "A"]
    strands = range(p + 1, p + n + 1)
    rels: List[Word] = []
    # (a) Artin-type relations
    for c in a_gens:
        for t in a_gens:
            if c == t:
                continue
            (r, s), (i, j) = c.idx, t.idx
            rhs = _artin_type_rhs(r, s, i, j)
            if rhs is not None:
                rels.append(_w(c, t, (c, -1)) * rhs.inverse())
    # (b)
    for i in strands:
        for j in strands:
            if not i < j:
                continue
            for k in range(1, g + 1):
                for l in range(1, g + 1):
                    rhs = _rho_rho_rhs(i, k, j, l)
                    rels.append(_w(Rho(i, k), Rho(j, l), (Rho(i, k), -1)) * rhs.inverse())
    # (c) surface relations
    for j in strands:
        rels.append(_surface_relator(g, p, n, j))
    # (d)
    for t in a_gens:
        i, j = t.idx
        for k in strands:
            if k == j:
                continue
            for l in range(1, g + 1):
                rhs = _rho_a_rhs(k, l, i, j)
                if rhs is not None:
                    rels.append(_w(Rho(k, l), t, (Rho(k, l), -1)) * rhs.inverse())
    return Presentation.make(gens, rels, f"nonorientable(g={g},p={p},n={n})")


# ---------------------------------------------------------------------------


def braid_presentation(family: str, g: int, p: int, n: int) -> Presentation:
    if family == SPHERE:
        _check(g == 0, "sphere family has g = 0")
        return pure_braid_punctured_sphere(p, n)
    if family == ORIENTABLE:
        return pure_braid_orientable(g, p, n)
    if family == NONORIENTABLE:
        return pure_braid_nonorientable(g, p, n)
    raise InvalidParams(f"unknown family {family!r}")


def artin_band(family: str, g: int, p: int, n: int) -> Tuple[int, int]:
    """Inclusive strand-index range ``(lo, hi)`` carrying the Artin generators."""
    if family == SPHERE:
        return p, p + n - 1
    if family == ORIENTABLE:
        return 2 * g + p, 2 * g + p + n - 1
    if family == NONORIENTABLE:
        return p + 1, p + n
    raise InvalidParams(f"unknown family {family!r}")


def artin_generator_set(family: str, g: int, p: int, n: int) -> Set[Symbol]:
    _validate(family, g, p, n)
    lo, hi = artin_band(family, g, p, n)
    return {A(i, j) for i in range(lo, hi + 1) for j in range(i + 1, hi + 1)}


def _validate(family, g, p, n):
    if family == SPHERE:
        _check(g == 0 and p >= 1 and n >= 1, "sphere family needs g = 0, p >= 1, n >= 1")
    elif family in (ORIENTABLE, NONORIENTABLE):
        _check(g >= 1 and p >= 1 and n >= 1, f"{family} family needs g, p, n >= 1")
    else:
        raise InvalidParams(f"unknown family {family!r}")


def surface_group(s: SurfaceSpec) -> Presentation:
    """Fundamental group of a punctured surface (p >= 1)."""
    if s.p == 0:
        raise ClosedSurfaceUnsupported(f"closed surface {s.label()} is not supported")
    if s.orientable:
        rank = 2 * s.g + s.p - 1
        return Presentation(tuple(Plain("x", i) for i in range(1, rank + 1)), (),
                            f"pi1({s.cli()})")
    gens = [Plain("A", i) for i in range(1, s.p + 1)] + [Plain("rho", l) for l in range(1, s.g + 1)]
    rel = _w(*[(Plain("rho", l), 2) for l in range(1, s.g + 1)]) * \
        _w(*[Plain("A", i) for i in range(1, s.p + 1)]).inverse()
    return Presentation.make(gens, [rel], f"pi1({s.cli()})")


def direct_power_presentation(base: Presentation, n: int) -> Presentation:
    """``n`` relabelled copies of ``base`` with all cross-copy commutators."""
    _check(n >= 1, "direct power needs n >= 1")
    if n == 1:
        return base
    copies = [[g.with_copy(c) for g in base.generators] for c in range(1, n + 1)]
    rels: List[Word] = []
    for c in range(1, n + 1):
        images = {g: Word.gen(g.with_copy(c)) for g in base.generators}
        rels.extend(substitute(r, images) for r in base.relators)
    for a in range(n):
        for b in range(a + 1, n):
            for x in copies[a]:
                for y in copies[b]:
                    rels.append(commutator(x, y))
    gens = [g for cp in copies for g in cp]
    return Presentation.make(gens, rels, f"power({base.provenance},{n})")


def power_symbol(sym: Symbol, copy: int, n: int) -> Symbol:
    """Name of ``sym`` inside copy ``copy`` of an ``n``-fold direct power."""
    return sym if n == 1 else sym.with_copy(copy)
