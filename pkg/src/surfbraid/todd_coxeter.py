"""Todd-Coxeter coset enumeration over the trivial subgroup (HLT + lookahead)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import NotClosed, Overflow
from .presentations import Presentation
from .words import Symbol, Word

DEFAULT_MAX_COSETS = 100_000


@dataclass(frozen=True)
class CosetTable:
    """Rows are cosets, columns ``2k`` / ``2k+1`` are generator ``k`` and its inverse."""

    generators: Tuple[Symbol, ...]
    rows: Tuple[Tuple[int, ...], ...]
    closed: bool = True

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, sym: Symbol, exp: int) -> int:
        return 2 * self.generators.index(sym) + (exp < 0)

    def act(self, coset: int, w: Word) -> int:
        col = {g: 2 * k for k, g in enumerate(self.generators)}
        for s, e in w:
            coset = self.rows[coset][col[s] + (e < 0)]
        return coset

    def to_json(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "closed": self.closed,
            "rows": [list(r) for r in self.rows],
        }


class _Enumerator:
    def __init__(self, ncols: int, relators: Sequence[Tuple[int, ...]], max_cosets: int):
        self.ncols = ncols
        self.relators = relators
        self.max_cosets = max_cosets
        self.table: List[List[Optional[int]]] = [[None] * ncols]
        self.parent: List[int] = [0]
        self.live = 1
        self.queue: deque = deque()

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int):
        if self.live >= self.max_cosets:
            self.lookahead()
            if self.live >= self.max_cosets:
                raise Overflow(self.max_cosets)
            if not self.is_live(c) or self.table[c][x] is not None:
                return
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def merge(self, a: int, b: int):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        self.queue.append(b)

    def coincidence(self, a: int, b: int):
        self.merge(a, b)
        table = self.table
        while self.queue:
            e = self.queue.popleft()
            for x in range(self.ncols):
                f = table[e][x]
                if f is None:
                    continue
                table[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if table[e1][x] is not None:
                    self.merge(f1, table[e1][x])
                elif table[f1][x ^ 1] is not None:
                    self.merge(e1, table[f1][x ^ 1])
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def scan(self, c: int, w: Tuple[int, ...], fill: bool):
        table = self.table
        while True:
            f, i = c, 0
            b, j = c, len(w) - 1
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, w[i])
            if not self.is_live(c):
                return

    def lookahead(self):
        for c in range(len(self.table)):
            if not self.is_live(c):
                continue
            for w in self.relators:
                self.scan(c, w, fill=False)
                if not self.is_live(c):
                    break

    def run(self):
        c = 0
        while c < len(self.table):
            if self.is_live(c):
                for w in self.relators:
                    self.scan(c, w, fill=True)
                    if not self.is_live(c):
                        break
                if self.is_live(c):
                    for x in range(self.ncols):
                        if self.table[c][x] is None:
                            self.define(c, x)
            c += 1

    def standardized(self) -> List[List[int]]:
        """Renumber live cosets in breadth-first order from coset 0."""
        order = {0: 0}
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for x in range(self.ncols):
                d = self.rep(self.table[c][x])
                if d not in order:
                    order[d] = len(order)
                    queue.append(d)
        rows = [None] * len(order)
        for c, k in order.items():
            rows[k] = [order[self.rep(self.table[c][x])] for x in range(self.ncols)]
        return rows


def todd_coxeter(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of the trivial subgroup; the row count is the group order.

    Raises :class:`Overflow` if more than ``max_cosets`` live cosets are needed.
    """
    col = {g: 2 * k for k, g in enumerate(p.generators)}
    relators = sorted(
        {tuple(col[s] + (e < 0) for s, e in r) for r in p.relators}, key=lambda c: (len(c), c)
    )
    en = _Enumerator(2 * len(p.generators), relators, max_cosets)
    en.run()
    rows = en.standardized()
    return CosetTable(tuple(p.generators), tuple(tuple(r) for r in rows), True)


def representatives(t: CosetTable) -> List[Word]:
    """Shortest-first spanning-tree words reaching each coset from coset 0."""
    reps: List[Optional[Word]] = [None] * len(t.rows)
    reps[0] = Word()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x, d in enumerate(t.rows[c]):
            if reps[d] is None:
                reps[d] = reps[c] * Word([(t.generators[x >> 1], -1 if x & 1 else 1)])
                queue.append(d)
    return reps


def to_finite_group(t: CosetTable):
    """Multiplication table of the regular action; coset 0 is the identity."""
    from .twisted import FiniteGroup

    if not t.closed:
        raise NotClosed("coset table is not closed")
    n = len(t.rows)
    cols = [[row[2 * k] for row in t.rows] for k in range(len(t.generators))]
    reps = representatives(t)
    gen_index = {g: k for k, g in enumerate(t.generators)}
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            c = a
            for s, e in reps[b]:
                k = gen_index[s]
                c = cols[k][c] if e > 0 else t.rows[c][2 * k + 1]
            row.append(c)
        table.append(row)
    return FiniteGroup(table, identity=0)
