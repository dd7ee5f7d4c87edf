"""Twisted conjugacy and Reidemeister numbers.

Two elements ``x, y`` are twisted conjugate under an endomorphism ``f`` when
``x = z y f(z)^-1`` for some ``z``; the number of classes is ``R(f)``.
Exact counts are available on finite groups (orbit counting and Burnside
averaging) and on free abelian groups (``|det(M - I)|``); quotients give
certified lower bounds; free groups only get a bounded exploration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    BudgetTooLarge,
    NotHomomorphism,
    NotInvariant,
    NotNormal,
    NotSquare,
    NotSupported,
    TooLarge,
)
from .presentations import Presentation, abelianization_matrix
from .smith import IntMatrix, smith_normal_form
from .words import Symbol, Word

AUTOMORPHISM_BOUND = 64


# ---------------------------------------------------------------------------
# counts


@dataclass(frozen=True)
class ReidemeisterCount:
    """A positive integer, or infinite when ``value`` is None."""

    value: Optional[int]

    def __post_init__(self):
        if self.value is not None and self.value < 1:
            raise ValueError("a finite Reidemeister number is >= 1")

    @property
    def infinite(self) -> bool:
        return self.value is None

    def to_json(self):
        return "inf" if self.value is None else self.value

    def __str__(self):
        return "inf" if self.value is None else str(self.value)

    def __ge__(self, other: "ReidemeisterCount") -> bool:
        if self.infinite:
            return True
        return not other.infinite and self.value >= other.value


INFINITE = ReidemeisterCount(None)


# ---------------------------------------------------------------------------
# finite groups


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if a > b:
            a, b = b, a
        self.parent[b] = a
        return True

    def classes(self) -> List[List[int]]:
        groups: dict = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values())


class FiniteGroup:
    """A group given by its multiplication table ``table[a][b] = a*b``."""

    def __init__(self, table, identity: int = 0, check: bool = True):
        self.table = np.asarray(table, dtype=np.int64)
        self.order = len(self.table)
        self.identity = identity
        if self.table.shape != (self.order, self.order):
            raise ValueError("multiplication table must be square")
        inv = np.argmax(self.table == identity, axis=1)
        self.inverse = inv
        if check:
            self._check_axioms()

    def _check_axioms(self):
        n, t, e = self.order, self.table, self.identity
        ar = np.arange(n)
        if not (0 <= e < n) or not (t[e] == ar).all() or not (t[:, e] == ar).all():
            raise ValueError("identity element is not two-sided")
        for row in (t, t.T):
            if not all(len(np.unique(r)) == n for r in row):
                raise ValueError("table is not a Latin square (inverses fail)")
        if n <= 64:
            a, b, c = ar[:, None, None], ar[None, :, None], ar[None, None, :]
            ok = (t[t[a, b], c] == t[a, t[b, c]]).all()
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 20000))
            ok = (t[t[a, b], c] == t[a, t[b, c]]).all()
        if not ok:
            raise ValueError("multiplication is not associative")

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.table[x, a])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def closure(self, gens: Iterable[int]) -> List[int]:
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(self.table[x, s])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def generating_sequence(self) -> List[int]:
        """A generating sequence of minimum size (greedy when the search is too wide)."""
        if self.order == 1:
            return []
        elems = list(range(self.order))
        elems.remove(self.identity)
        # prefer elements of large order so the first hit is found early
        elems.sort(key=lambda a: (-self.element_order(a), a))
        for k in range(1, len(elems) + 1):
            count = 0
            for combo in itertools.combinations(elems, k):
                count += 1
                if count > 20000:
                    break
                if len(self.closure(combo)) == self.order:
                    return list(combo)
            else:
                continue
            break
        gens: List[int] = []
        span = {self.identity}
        for a in elems:
            if a not in span:
                gens.append(a)
                span = set(self.closure(gens))
                if len(span) == self.order:
                    break
        return gens

    def conjugacy_classes(self) -> List[List[int]]:
        uf = UnionFind(self.order)
        t, inv = self.table, self.inverse
        for g in range(self.order):
            for x in range(self.order):
                uf.union(x, int(t[t[g, x], inv[g]]))
        return uf.classes()

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table.tolist(), "identity": self.identity}

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteGroup":
        g = cls(data["table"], identity=data.get("identity", 0))
        if data.get("order", g.order) != g.order:
            raise ValueError("order field disagrees with the table")
        return g


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


class FiniteEndo:
    """An endomorphism of a finite group given by the image of every element."""

    def __init__(self, group: FiniteGroup, images: Sequence[int], check: bool = True):
        self.group = group
        self.images = np.asarray(images, dtype=np.int64)
        if check:
            if self.images.shape != (group.order,):
                raise NotHomomorphism("image list must cover every element")
            t, f = group.table, self.images
            if not (f[t] == t[f[:, None], f[None, :]]).all():
                raise NotHomomorphism("map is not multiplicative")

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def is_bijective(self) -> bool:
        return len(np.unique(self.images)) == self.group.order

    def compose_inner(self, g: int) -> "FiniteEndo":
        """``x -> f(g x g^-1)``."""
        G = self.group
        conj = G.table[G.table[g], G.inverse[g]]
        return FiniteEndo(G, self.images[conj], check=False)

    def to_json(self) -> list:
        return self.images.tolist()

    @classmethod
    def identity(cls, group: FiniteGroup) -> "FiniteEndo":
        return cls(group, np.arange(group.order), check=False)


def twisted_classes_finite(G: FiniteGroup, f: FiniteEndo) -> List[List[int]]:
    """Orbits of ``z . x = z x f(z)^-1``; their number is ``R(f)``."""
    uf = UnionFind(G.order)
    t, inv, img = G.table, G.inverse, f.images
    gens = G.generating_sequence()
    # orbits of a group action are generated by the action of a generating set
    for z in gens:
        fz_inv = inv[img[z]]
        for x in range(G.order):
            uf.union(x, int(t[t[z, x], fz_inv]))
    return uf.classes()


def reidemeister_finite(G: FiniteGroup, f: FiniteEndo) -> ReidemeisterCount:
    return ReidemeisterCount(len(twisted_classes_finite(G, f)))


def reidemeister_finite_burnside(G: FiniteGroup, f: FiniteEndo) -> ReidemeisterCount:
    """Average number of fixed points of the twisted action over all of ``G``."""
    t, inv, img = G.table, G.inverse, f.images
    ar = np.arange(G.order)
    moved = t[t[ar[:, None], ar[None, :]], inv[img][:, None]]  # moved[z, x] = z x f(z)^-1
    total = int((moved == ar[None, :]).sum())
    if total % G.order:
        raise ArithmeticError("Burnside average is not an integer")
    return ReidemeisterCount(total // G.order)


def homomorphisms_finite(G: FiniteGroup, bijective: bool = False) -> List[FiniteEndo]:
    """All endomorphisms (or automorphisms) of ``G`` in a fixed deterministic order.

    Candidates are image tuples of a minimum generating sequence, listed in
    lexicographic order.
    """
    gens = G.generating_sequence()
    n = G.order
    if not gens:
        return [FiniteEndo.identity(G)]
    # spanning tree: every element is parent * gens[label]
    parent = [-1] * n
    label = [-1] * n
    seen = {G.identity}
    order_bfs = [G.identity]
    for x in order_bfs:
        for k, s in enumerate(gens):
            y = G.mul(x, s)
            if y not in seen:
                seen.add(y)
                parent[y], label[y] = x, k
                order_bfs.append(y)
    orders = [G.element_order(a) for a in range(n)]
    cands = []
    for s in gens:
        o = orders[s]
        if bijective:
            cands.append([a for a in range(n) if orders[a] == o])
        else:
            cands.append([a for a in range(n) if o % orders[a] == 0])
    t = G.table
    gens_arr = np.asarray(gens)
    out = []
    for imgs in itertools.product(*cands):
        f = np.empty(n, dtype=np.int64)
        f[G.identity] = G.identity
        for y in order_bfs[1:]:
            f[y] = t[f[parent[y]], imgs[label[y]]]
        if bijective and len(np.unique(f)) != n:
            continue
        # f(x s) = f(x) f(s) for all x and generators s makes f multiplicative
        if not (f[t[:, gens_arr]] == t[f[:, None], np.asarray(imgs)[None, :]]).all():
            continue
        out.append(FiniteEndo(G, f, check=False))
    return out


def automorphisms_finite(G: FiniteGroup, bound: int = AUTOMORPHISM_BOUND) -> List[FiniteEndo]:
    if G.order > bound:
        raise TooLarge(f"group of order {G.order} exceeds the automorphism bound {bound}")
    return homomorphisms_finite(G, bijective=True)


def min_reidemeister_finite(
    G: FiniteGroup, bound: int = AUTOMORPHISM_BOUND
) -> Tuple[ReidemeisterCount, FiniteEndo]:
    best = None
    for f in automorphisms_finite(G, bound):
        r = len(twisted_classes_finite(G, f))
        if best is None or r < best[0]:
            best = (r, f)
    return ReidemeisterCount(best[0]), best[1]


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class InequalityReport:
    r_group: int
    r_quotient: int
    quotient_order: int

    @property
    def holds(self) -> bool:
        return self.r_group >= self.r_quotient


def quotient_group(G: FiniteGroup, N: Iterable[int]) -> Tuple[FiniteGroup, List[int]]:
    """``G/N`` and the projection (element -> coset index); ``N`` must be normal."""
    N = sorted(set(int(x) for x in N))
    Nset = set(N)
    if G.identity not in Nset or any(G.mul(a, b) not in Nset for a in N for b in N):
        raise NotNormal("N is not a subgroup")
    for g in range(G.order):
        gi = G.inv(g)
        if any(G.mul(G.mul(g, x), gi) not in Nset for x in N):
            raise NotNormal("N is not normal")
    proj = [-1] * G.order
    reps = []
    for g in range(G.order):
        if proj[g] < 0:
            k = len(reps)
            reps.append(g)
            for x in N:
                proj[G.mul(g, x)] = k
    table = [[proj[G.mul(a, b)] for b in reps] for a in reps]
    return FiniteGroup(table, identity=proj[G.identity]), proj


def lifted_inequality_check(G: FiniteGroup, N: Iterable[int], f: FiniteEndo) -> InequalityReport:
    """Compute ``R(f)`` and ``R(f bar)`` on ``G/N`` and report the inequality."""
    N = sorted(set(int(x) for x in N))
    Q, proj = quotient_group(G, N)
    Nset = set(N)
    if any(f(x) not in Nset for x in N):
        raise NotInvariant("f(N) is not contained in N")
    reps = [None] * Q.order
    for g in range(G.order):
        if reps[proj[g]] is None:
            reps[proj[g]] = g
    fbar = FiniteEndo(Q, [proj[f(r)] for r in reps])
    r = len(twisted_classes_finite(G, f))
    rq = len(twisted_classes_finite(Q, fbar))
    return InequalityReport(r, rq, Q.order)


# ---------------------------------------------------------------------------
# free abelian groups


def reidemeister_abelian(M: IntMatrix) -> ReidemeisterCount:
    """``R`` of the endomorphism of ``Z^k`` with matrix ``M``: ``|coker(M - I)|``."""
    if M.rows != M.cols:
        raise NotSquare(f"matrix is {M.rows}x{M.cols}")
    D, _, _ = smith_normal_form(M - IntMatrix.identity(M.rows))
    diag = D.diagonal()
    if any(d == 0 for d in diag):
        return INFINITE
    value = 1
    for d in diag:
        value *= d
    return ReidemeisterCount(value)


def _inverse_unimodular(V: IntMatrix) -> IntMatrix:
    n = V.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(V.entries)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                q = a[r][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[c])]
    out = [[int(x) for x in row[n:]] for row in a]
    if any(x.denominator != 1 for row in a for x in row[n:]):
        raise ArithmeticError("matrix is not unimodular")
    return IntMatrix.from_rows(out, n)


@dataclass(frozen=True)
class AbelianCertificate:
    """Lower bound for ``R`` of an endomorphism, read off its abelianization."""

    bound: ReidemeisterCount
    induced_matrix: IntMatrix

    @property
    def certified_infinite(self) -> bool:
        return self.bound.infinite

    def to_json(self) -> dict:
        return {
            "R_lower_bound": self.bound.to_json(),
            "certified_infinite": self.certified_infinite,
            "induced_matrix": self.induced_matrix.to_list(),
        }


def induced_abelian_matrix(p: Presentation, images: Mapping[Symbol, Word]) -> IntMatrix:
    """Matrix (row convention) of the map induced on the free abelianization of ``p``."""
    k = len(p.generators)
    R = abelianization_matrix(p)
    D, _, V = smith_normal_form(R)
    diag = D.diagonal()
    if any(d > 1 for d in diag):
        raise NotSupported("abelianization has torsion")
    s = sum(1 for d in diag if d)
    col = {g: i for i, g in enumerate(p.generators)}
    E_rows = []
    for g in p.generators:
        row = [0] * k
        for sym, e in images[g]:
            if sym not in col:
                raise NotHomomorphism(f"image of {g} uses unknown symbol {sym}")
            row[col[sym]] += e
        E_rows.append(row)
    E = IntMatrix.from_rows(E_rows, k)
    Vinv = _inverse_unimodular(V)
    # relator images must stay in the relation lattice
    if R.rows:
        moved = R @ E @ V
        if any(moved[i, j] for i in range(moved.rows) for j in range(s, k)):
            raise NotHomomorphism("map does not preserve the relators")
    N = Vinv @ E @ V
    return IntMatrix.from_rows([row[s:] for row in N.entries[s:]], k - s)


def abelianization_certificate(p: Presentation, images: Mapping[Symbol, Word]) -> AbelianCertificate:
    """``R(e) >= R(e_ab)``; infinite means the bound certifies ``R(e) = inf``."""
    M = induced_abelian_matrix(p, images)
    return AbelianCertificate(reidemeister_abelian(M), M)


# ---------------------------------------------------------------------------
# free groups


@dataclass(frozen=True)
class FreeEndo:
    """Endomorphism of the free group on ``generators``; ``images[i]`` is the image of generator i."""

    generators: Tuple[Symbol, ...]
    images: Tuple[Word, ...]

    def __post_init__(self):
        if len(self.generators) != len(self.images):
            raise ValueError("one image per generator")
        gens = set(self.generators)
        for w in self.images:
            if not w.symbols() <= gens:
                raise ValueError(f"image {w} leaves the free alphabet")

    @property
    def rank(self) -> int:
        return len(self.generators)


def _reduced_words(rank: int, max_len: int) -> List[Tuple[int, ...]]:
    out = [()]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for c in range(2 * rank):
                if w and w[-1] == c ^ 1:
                    continue
                nxt.append(w + (c,))
        out.extend(nxt)
        layer = nxt
    return out


def _free_reduce_codes(w: Sequence[int]) -> Tuple[int, ...]:
    st: List[int] = []
    for c in w:
        if st and st[-1] == c ^ 1:
            st.pop()
        else:
            st.append(c)
    return tuple(st)


@dataclass(frozen=True)
class FreeCensus:
    classes: int
    words: int
    witnesses: int


def bounded_census_free(e: FreeEndo, L: int, B: int, max_work: int = 5_000_000) -> FreeCensus:
    """Union-find census of reduced words of length <= L under witnesses |z| <= B.

    Merges ``x ~ z x e(z)^-1`` only when the result also has length <= L, so the
    count is an upper bound for the number of twisted classes met by those
    words and is non-increasing in ``B``.
    """
    if e.rank > 3 or L > 8 or B > 4 or L < 0 or B < 0:
        raise BudgetTooLarge("desk scale is rank <= 3, L <= 8, B <= 4")
    code = {g: 2 * k for k, g in enumerate(e.generators)}
    img = [tuple(code[s] + (x < 0) for s, x in w) for w in e.images]
    img_codes = {}
    for k, w in enumerate(img):
        img_codes[2 * k] = w
        img_codes[2 * k + 1] = tuple(c ^ 1 for c in reversed(w))
    words = _reduced_words(e.rank, L)
    witnesses = _reduced_words(e.rank, B)
    if len(words) * len(witnesses) > max_work:
        raise BudgetTooLarge(f"{len(words)} words x {len(witnesses)} witnesses exceeds {max_work}")
    index = {w: i for i, w in enumerate(words)}
    uf = UnionFind(len(words))
    for z in witnesses:
        if not z:
            continue
        fz = _free_reduce_codes([c for x in z for c in img_codes[x]])
        fz_inv = tuple(c ^ 1 for c in reversed(fz))
        for x, i in index.items():
            y = _free_reduce_codes(z + x + fz_inv)
            j = index.get(y)
            if j is not None:
                uf.union(i, j)
    return FreeCensus(len(uf.classes()), len(words), len(witnesses))
