"""Finitely presented groups, homomorphisms and abelian invariants."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import StrategyUnavailable
from .smith import IntMatrix, smith_normal_form
from .words import (
    Symbol,
    Word,
    cyclic_key,
    cyclically_reduce,
    parse_symbol,
    parse_word,
    render,
    substitute,
)


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[Symbol, ...]
    relators: Tuple[Word, ...]
    provenance: str = "ad hoc"

    def __post_init__(self):
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise ValueError("duplicate generators")
        for r in self.relators:
            if not r:
                raise ValueError("empty relator")
            if cyclically_reduce(r) != r:
                raise ValueError(f"relator not cyclically reduced: {r}")
            extra = r.symbols() - gens
            if extra:
                raise ValueError(
                    f"relator {r} uses undeclared generators {sorted(map(str, extra))}"
                )

    @classmethod
    def make(cls, generators: Iterable[Symbol], relators: Iterable[Word],
             provenance: str = "ad hoc", dedupe: bool = False) -> "Presentation":
        """Cyclically reduce relators and drop trivial ones.

        With ``dedupe`` relators equal up to rotation and inversion are merged
        (first occurrence kept).
        """
        rels: List[Word] = []
        seen = set()
        for r in relators:
            r = cyclically_reduce(r)
            if not r:
                continue
            if dedupe:
                k = cyclic_key(r)
                if k in seen:
                    continue
                seen.add(k)
            rels.append(r)
        return cls(tuple(generators), tuple(rels), provenance)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def to_json(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "relators": [render(r) for r in self.relators],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Presentation":
        return cls.make(
            [parse_symbol(g) for g in data["generators"]],
            [parse_word(r) for r in data.get("relators", [])],
            data.get("provenance", "ad hoc"),
        )

    def dumps(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_json(), indent=indent)


@dataclass(frozen=True)
class GroupHom:
    source: Presentation
    target: Presentation
    images: Mapping[Symbol, Word]

    def __post_init__(self):
        missing = [g for g in self.source.generators if g not in self.images]
        if missing:
            raise ValueError(f"images not total: missing {[str(g) for g in missing]}")
        tgt = set(self.target.generators)
        for g, w in self.images.items():
            if not w.symbols() <= tgt:
                raise ValueError(f"image of {g} leaves the target alphabet: {w}")

    def __call__(self, w: Word) -> Word:
        return substitute(w, self.images)

    def to_json(self) -> dict:
        return {str(g): render(self.images[g]) for g in self.source.generators}


# ---------------------------------------------------------------------------
# word-problem strategies


class WordProblemStrategy:
    """Decides ``w == 1`` exactly in one group, or raises StrategyUnavailable."""

    name = "abstract"

    def is_identity(self, w: Word) -> bool:
        raise NotImplementedError

    def equal(self, u: Word, v: Word) -> bool:
        return self.is_identity(u * v.inverse())

    def applies_to(self, p: Presentation) -> bool:
        return True


class FreeReduction(WordProblemStrategy):
    """Target is free on its generators: identity iff freely trivial."""

    name = "FreeReduction"

    def applies_to(self, p: Presentation) -> bool:
        return not p.relators

    def is_identity(self, w: Word) -> bool:
        return w.is_identity()


@dataclass
class DirectPowerOfFree(WordProblemStrategy):
    """Direct product of free factors.

    ``factor_of`` assigns each free generator to its factor.  ``eliminations``
    rewrites redundant generators (e.g. one eliminated by a one-relator
    Tietze move) into free generators before projecting onto factors.
    """

    factor_of: Mapping[Symbol, int]
    eliminations: Mapping[Symbol, Word] = field(default_factory=dict)
    name = "DirectPowerOfFree"

    def is_identity(self, w: Word) -> bool:
        w = substitute(w, self.eliminations)
        parts: Dict[int, list] = {}
        for s, e in w:
            f = self.factor_of.get(s)
            if f is None:
                raise StrategyUnavailable(f"symbol {s} is not a free generator of any factor")
            parts.setdefault(f, []).append((s, e))
        return all(Word(ls).is_identity() for ls in parts.values())


class RewriteSystemStrategy(WordProblemStrategy):
    name = "RewriteSystem"

    def __init__(self, rs):
        self.rs = rs

    def is_identity(self, w: Word) -> bool:
        if not self.rs.confluent:
            raise StrategyUnavailable("rewrite system is not confluent")
        return self.rs.normal_form(w).is_identity()


class CosetTableStrategy(WordProblemStrategy):
    name = "CosetTable"

    def __init__(self, table):
        self.table = table

    def is_identity(self, w: Word) -> bool:
        if not self.table.closed:
            raise StrategyUnavailable("coset table is not closed")
        return self.table.act(0, w) == 0


@dataclass(frozen=True)
class HomCertificate:
    well_defined: bool
    failing_relator: Optional[Word] = None
    strategy: str = ""

    def to_json(self) -> dict:
        return {
            "well_defined": self.well_defined,
            "failing_relator": render(self.failing_relator) if self.failing_relator else None,
            "strategy": self.strategy,
        }


def check_hom(h: GroupHom, strategy: WordProblemStrategy) -> HomCertificate:
    """Check that every source relator maps to the identity of the target."""
    if not strategy.applies_to(h.target):
        raise StrategyUnavailable(f"{strategy.name} does not apply to {h.target.provenance}")
    for r in h.source.relators:
        if not strategy.is_identity(h(r)):
            return HomCertificate(False, r, strategy.name)
    return HomCertificate(True, None, strategy.name)


def compose(h1: GroupHom, h2: GroupHom) -> GroupHom:
    """Generator-wise composite ``h2 . h1``."""
    return GroupHom(h1.source, h2.target, {g: h2(h1.images[g]) for g in h1.source.generators})


# ---------------------------------------------------------------------------
# abelianization


def abelianization_matrix(p: Presentation) -> IntMatrix:
    col = {g: k for k, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for s, e in r:
            row[col[s]] += e
        rows.append(row)
    return IntMatrix.from_rows(rows, len(p.generators))


def invariants_from_matrix(m: IntMatrix) -> Tuple[int, List[int]]:
    d, _, _ = smith_normal_form(m)
    diag = [x for x in d.diagonal() if x != 0]
    torsion = [x for x in diag if x > 1]
    return m.cols - len(diag), torsion


def abelian_invariants(p: Presentation) -> Tuple[int, List[int]]:
    """``(free_rank, torsion)`` of the abelianization, torsion in divisibility order."""
    return invariants_from_matrix(abelianization_matrix(p))


def free_presentation(generators: Sequence[Symbol], provenance: str = "free") -> Presentation:
    return Presentation(tuple(generators), (), provenance)
