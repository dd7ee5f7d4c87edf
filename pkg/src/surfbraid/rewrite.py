"""Shortlex Knuth-Bendix completion for group presentations.

Letters are encoded as integers: generator number ``k`` in the chosen order
gives ``2k`` for the generator and ``2k + 1`` for its formal inverse, so
integer comparison is the letter order (a generator precedes its inverse,
which precedes the next generator).
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import Exhausted, NotConfluent
from .words import Symbol, Word, letters_of, sorted_symbols

Code = Tuple[int, ...]


@dataclass(frozen=True)
class Budget:
    max_rules: int = 50_000
    max_rule_length: int = 64
    max_steps: int = 5_000_000


def _shortlex_key(w: Code):
    return (len(w), w)


def _inv(w: Code) -> Code:
    return tuple(c ^ 1 for c in reversed(w))


class _Completion:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.rules: Dict[Code, Code] = {}
        self.lengths: List[int] = []
        self.steps = 0

    def _tick(self, n: int = 1):
        self.steps += n
        if self.steps > self.budget.max_steps:
            raise Exhausted("max_steps", f"(> {self.budget.max_steps})")

    def _refresh_lengths(self):
        self.lengths = sorted({len(l) for l in self.rules})

    def reduce(self, w: Code) -> Code:
        rules, lengths = self.rules, self.lengths
        stack: List[int] = []
        todo = list(reversed(w))
        n = 0
        while todo:
            stack.append(todo.pop())
            for L in lengths:
                if L > len(stack):
                    break
                rhs = rules.get(tuple(stack[-L:]))
                if rhs is not None:
                    del stack[-L:]
                    todo.extend(reversed(rhs))
                    n += 1
                    break
        if n:
            self._tick(n)
        return tuple(stack)

    def critical_pairs(self, l1: Code, l2: Code):
        """Overlaps where a proper suffix of ``l1`` is a prefix of ``l2``."""
        r1, r2 = self.rules[l1], self.rules[l2]
        for k in range(1, min(len(l1), len(l2))):
            if l1[-k:] == l2[:k]:
                yield r1 + l2[k:], l1[:-k] + r2

    def run(self, equations: Iterable[Tuple[Code, Code]]):
        heap: list = []
        counter = itertools.count()

        def push(u: Code, v: Code):
            big = max(u, v, key=_shortlex_key)
            heapq.heappush(heap, (len(big), big, next(counter), u, v))

        for u, v in equations:
            push(u, v)

        while True:
            while heap:
                _, _, _, u, v = heapq.heappop(heap)
                self._tick()
                u, v = self.reduce(u), self.reduce(v)
                if u == v:
                    continue
                lhs, rhs = (u, v) if _shortlex_key(u) > _shortlex_key(v) else (v, u)
                if len(lhs) > self.budget.max_rule_length:
                    raise Exhausted("max_rule_length", f"(rule of length {len(lhs)})")
                self._add_rule(lhs, rhs, push)
            # verification sweep: every critical pair of the final system must join
            missing = False
            for l1 in list(self.rules):
                for l2 in list(self.rules):
                    for a, b in self.critical_pairs(l1, l2):
                        if self.reduce(a) != self.reduce(b):
                            push(a, b)
                            missing = True
            if not missing:
                return

    def _add_rule(self, lhs: Code, rhs: Code, push):
        # interreduce existing rules against the new one
        for l, r in list(self.rules.items()):
            if _contains(l, lhs):
                del self.rules[l]
                push(l, r)
        self.rules[lhs] = rhs
        if len(self.rules) > self.budget.max_rules:
            raise Exhausted("max_rules", f"(> {self.budget.max_rules})")
        self._refresh_lengths()
        for l, r in list(self.rules.items()):
            if l != lhs and _contains(r, lhs):
                self.rules[l] = self.reduce(r)
        for l in sorted(self.rules, key=_shortlex_key):
            for a, b in self.critical_pairs(lhs, l):
                push(a, b)
            if l != lhs:
                for a, b in self.critical_pairs(l, lhs):
                    push(a, b)


def _contains(hay: Code, needle: Code) -> bool:
    n = len(needle)
    if n > len(hay):
        return False
    return any(hay[i:i + n] == needle for i in range(len(hay) - n + 1))


@dataclass(frozen=True)
class RewriteSystem:
    """A rewriting system over ``generators`` (in order) and their inverses."""

    generators: Tuple[Symbol, ...]
    rules: Tuple[Tuple[Code, Code], ...]
    confluent: bool
    _index: Dict[Code, Code] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", dict(self.rules))
        object.__setattr__(self, "_code", {g: 2 * k for k, g in enumerate(self.generators)})
        object.__setattr__(self, "_lengths", sorted({len(l) for l, _ in self.rules}))

    def encode(self, w: Word) -> Code:
        try:
            return tuple(self._code[s] + (e < 0) for s, e in w)
        except KeyError as exc:
            raise ValueError(f"symbol {exc.args[0]} not in the rewrite alphabet") from None

    def decode(self, c: Code) -> Word:
        return Word((self.generators[x >> 1], -1 if x & 1 else 1) for x in c)

    def rewrite(self, c: Code) -> Tuple[Code, int]:
        """Rewrite to an irreducible word; returns the word and the step count."""
        stack: List[int] = []
        todo = list(reversed(c))
        steps = 0
        while todo:
            stack.append(todo.pop())
            for L in self._lengths:
                if L > len(stack):
                    break
                rhs = self._index.get(tuple(stack[-L:]))
                if rhs is not None:
                    del stack[-L:]
                    todo.extend(reversed(rhs))
                    steps += 1
                    break
        return tuple(stack), steps

    def normal_form(self, w: Word) -> Word:
        if not self.confluent:
            raise NotConfluent("normal forms need a confluent system")
        return self.decode(self.rewrite(self.encode(w))[0])

    def words_equal(self, u: Word, v: Word) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def render_code(self, c: Code) -> str:
        """Render without free reduction (cancellation rules stay visible)."""
        if not c:
            return "1"
        return " ".join(
            f"{self.generators[x >> 1]}^-1" if x & 1 else str(self.generators[x >> 1]) for x in c
        )

    def to_json(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "confluent": self.confluent,
            "rules": [[self.render_code(l), self.render_code(r)] for l, r in self.rules],
        }


def kb_complete(
    relators: Iterable[Word],
    budget: Budget = Budget(),
    generators: Optional[Sequence[Symbol]] = None,
    order: Optional[Sequence[Symbol]] = None,
) -> RewriteSystem:
    """Complete the group presentation ``<generators | relators>``.

    ``order`` fixes the generator order used by shortlex; by default the
    symbols are sorted by their natural key.  Raises :class:`Exhausted` when
    a budget dimension trips.
    """
    relators = list(relators)
    syms = set(generators or ()) | letters_of(relators)
    if order is None:
        order = sorted_symbols(syms)
    else:
        order = list(order)
        if set(order) != syms or len(order) != len(syms):
            raise ValueError("order must list each alphabet symbol exactly once")
    code = {g: 2 * k for k, g in enumerate(order)}

    def enc(w: Word) -> Code:
        return tuple(code[s] + (e < 0) for s, e in w)

    eqs = [((2 * k, 2 * k + 1), ()) for k in range(len(order))]
    eqs += [((2 * k + 1, 2 * k), ()) for k in range(len(order))]
    for c in sorted({enc(r) for r in relators if r}, key=_shortlex_key):
        eqs.append((c, ()))

    comp = _Completion(budget)
    comp.run(eqs)
    rules = tuple(sorted(comp.rules.items(), key=lambda lr: _shortlex_key(lr[0])))
    return RewriteSystem(tuple(order), rules, True)


def normal_form(rs: RewriteSystem, w: Word) -> Word:
    return rs.normal_form(w)


def words_equal(rs: RewriteSystem, u: Word, v: Word) -> bool:
    return rs.words_equal(u, v)
