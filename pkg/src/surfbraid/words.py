"""Free-group words over braid-group generator symbols.

A :class:`Word` is an immutable, always freely reduced sequence of
``(Symbol, exponent)`` letters with exponent ``+1`` or ``-1``.  Relators for an
equation ``L = R`` are stored as the single word ``L * R**-1``.

Text grammar (used for rendering, parsing and JSON)::

    A[1,2]^-1 A[2,3] A[1,2]      # A-generators, two indices
    rho[2,1]^2                   # rho-generators, two indices
    x[3]  t  A[1]@2              # plain symbols, optional index, optional copy

The identity renders as ``1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple

_KIND_RANK = {"A": 0, "rho": 1, "plain": 2}


@dataclass(frozen=True)
class Symbol:
    """A generator symbol: ``A(i,j)``, ``Rho(r,k)`` or ``Plain(name, index)``.

    ``copy`` tags the factor a symbol belongs to inside a direct power; it is 0
    for ordinary symbols.  ``index`` 0 on a plain symbol means "no index".
    """

    kind: str
    idx: Tuple[int, ...] = ()
    name: str = ""
    copy: int = 0
    key: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind == "A":
            i, j = self.idx
            if not (1 <= i < j):
                raise ValueError(f"A-symbol needs 1 <= i < j, got {self.idx}")
        elif self.kind == "rho":
            r, k = self.idx
            if r < 1 or k < 1:
                raise ValueError(f"Rho-symbol needs r, k >= 1, got {self.idx}")
        elif self.kind == "plain":
            if not self.name:
                raise ValueError("plain symbol needs a name")
        else:
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.copy < 0:
            raise ValueError("copy index must be >= 0")
        object.__setattr__(
            self, "key", (_KIND_RANK[self.kind], self.copy, self.name, self.idx)
        )

    def __lt__(self, other: "Symbol") -> bool:
        return self.key < other.key

    def with_copy(self, copy: int) -> "Symbol":
        return Symbol(self.kind, self.idx, self.name, copy)

    def __str__(self) -> str:
        if self.kind == "A":
            s = "A[%d,%d]" % self.idx
        elif self.kind == "rho":
            s = "rho[%d,%d]" % self.idx
        elif self.idx and self.idx[0]:
            s = "%s[%d]" % (self.name, self.idx[0])
        else:
            s = self.name
        if self.copy:
            s += "@%d" % self.copy
        return s

    def __repr__(self) -> str:
        return f"Symbol({self})"


def A(i: int, j: int) -> Symbol:
    return Symbol("A", (i, j))


def Rho(r: int, k: int) -> Symbol:
    return Symbol("rho", (r, k))


def Plain(name: str, index: int = 0, copy: int = 0) -> Symbol:
    return Symbol("plain", (index,) if index else (), name, copy)


Letter = Tuple[Symbol, int]


def _free_reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    out: list = []
    for sym, e in letters:
        if e not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {e}")
        if out and out[-1][0] == sym and out[-1][1] == -e:
            out.pop()
        else:
            out.append((sym, e))
    return tuple(out)


class Word:
    """Immutable freely reduced word.  Construction always reduces."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        object.__setattr__(self, "letters", _free_reduce(letters))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def gen(cls, sym: Symbol, power: int = 1) -> "Word":
        e = 1 if power > 0 else -1
        return cls([(sym, e)] * abs(power))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.letters))
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((s, -e) for s, e in reversed(self.letters))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def is_identity(self) -> bool:
        return not self.letters

    def symbols(self) -> set:
        return {s for s, _ in self.letters}

    def exponent_sum(self, sym: Symbol) -> int:
        return sum(e for s, e in self.letters if s == sym)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Word({render(self)!r})"


IDENTITY = Word()


def reduce(letters: Iterable[Letter]) -> Word:
    """Free reduction of a raw letter sequence."""
    return Word(letters)


def word(*parts) -> Word:
    """Build a word from symbols, ``(symbol, exp)`` pairs and words."""
    out: list = []
    for p in parts:
        if isinstance(p, Word):
            out.extend(p.letters)
        elif isinstance(p, Symbol):
            out.append((p, 1))
        else:
            sym, e = p
            out.extend([(sym, 1 if e > 0 else -1)] * abs(e))
    return Word(out)


def commutator(x, y) -> Word:
    """``[x, y] = x^-1 y^-1 x y`` for symbols or words."""
    x = x if isinstance(x, Word) else Word.gen(x)
    y = y if isinstance(y, Word) else Word.gen(y)
    return x.inverse() * y.inverse() * x * y


def substitute_kill(w: Word, killed) -> Word:
    """Delete every letter whose symbol is in ``killed``."""
    if not killed:
        return w
    return Word(l for l in w.letters if l[0] not in killed)


def substitute(w: Word, images: Mapping[Symbol, Word]) -> Word:
    """Replace each symbol by its image word; unmapped symbols are kept."""
    out: list = []
    for s, e in w.letters:
        img = images.get(s)
        if img is None:
            out.append((s, e))
        else:
            out.extend(img.letters if e > 0 else img.inverse().letters)
    return Word(out)


def cyclically_reduce(w: Word) -> Word:
    letters = w.letters
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo][0] == letters[hi - 1][0] \
            and letters[lo][1] == -letters[hi - 1][1]:
        lo += 1
        hi -= 1
    if lo == 0:
        return w
    return Word(letters[lo:hi])


def rotations(w: Word) -> Iterator[Tuple[Letter, ...]]:
    letters = w.letters
    for k in range(len(letters)):
        yield letters[k:] + letters[:k]


def cyclic_key(w: Word) -> Tuple:
    """Canonical key of ``w`` up to rotation and inversion."""
    w = cyclically_reduce(w)
    if not w:
        return ()

    def lkey(rot):
        return tuple((s.key, e) for s, e in rot)

    cands = [lkey(r) for r in rotations(w)]
    cands += [lkey(r) for r in rotations(w.inverse())]
    return min(cands)


def commutator_shape(w: Word) -> Optional[Tuple[Symbol, Symbol]]:
    """Return ``(x, y)`` if ``w`` is ``[x, y]`` up to rotation and inversion."""
    if len(w) != 4:
        return None
    for base in (w, w.inverse()):
        for (a, ea), (b, eb), (c, ec), (d, ed) in rotations(base):
            if (ea, eb, ec, ed) == (-1, -1, 1, 1) and a == c and b == d and a != b:
                return a, b
    return None


_TOKEN = re.compile(
    r"(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"(?:\[(?P<idx>\d+(?:\s*,\s*\d+)?)\])?"
    r"(?:@(?P<copy>\d+))?"
    r"(?:\^(?P<exp>[+-]?\d+))?$"
)


def parse_symbol(text: str) -> Symbol:
    sym, exp = _parse_token(text)
    if exp != 1:
        raise ValueError(f"not a bare symbol: {text!r}")
    return sym


def _parse_token(tok: str) -> Tuple[Symbol, int]:
    m = _TOKEN.match(tok)
    if not m:
        raise ValueError(f"cannot parse word token {tok!r}")
    name = m.group("name")
    idx = tuple(int(x) for x in m.group("idx").split(",")) if m.group("idx") else ()
    copy = int(m.group("copy") or 0)
    exp = int(m.group("exp") or 1)
    if exp == 0:
        raise ValueError(f"zero exponent in {tok!r}")
    if len(idx) == 2 and name in ("A", "rho"):
        sym = Symbol(name, idx, "", copy)
    elif len(idx) <= 1:
        sym = Plain(name, idx[0] if idx else 0, copy)
    else:
        raise ValueError(f"two indices only allowed on A and rho: {tok!r}")
    return sym, exp


def parse_word(text: str) -> Word:
    """Parse the rendering grammar; ``1`` or an empty string is the identity."""
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY
    out: list = []
    for tok in re.split(r"[\s*]+", text.replace(", ", ",")):
        if not tok:
            continue
        sym, exp = _parse_token(tok)
        out.extend([(sym, 1 if exp > 0 else -1)] * abs(exp))
    return Word(out)


def render(w: Word) -> str:
    if not w.letters:
        return "1"
    return " ".join(str(s) if e == 1 else f"{s}^-1" for s, e in w.letters)


def sorted_symbols(symbols: Iterable[Symbol]) -> list:
    return sorted(set(symbols), key=lambda s: s.key)


def letters_of(words: Sequence[Word]) -> set:
    out: set = set()
    for w in words:
        out |= w.symbols()
    return out
