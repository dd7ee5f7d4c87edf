import itertools

import pytest

from surfbraid.errors import NotClosed, Overflow
from surfbraid.presentations import Presentation
from surfbraid.todd_coxeter import CosetTable, representatives, to_finite_group, todd_coxeter
from surfbraid.words import Plain, parse_word

FIXTURES = {
    "trivial": ((), (), 1),
    "Z2": (("a",), ("a^2",), 2),
    "Z3": (("a",), ("a^3",), 3),
    "Z5": (("a",), ("a^5",), 5),
    "S3": (("a", "b"), ("a^2", "b^2", "a b a b a b"), 6),
    "Z3:Z4": (("a", "b"), ("a^3", "b^4", "b^-1 a b a"), 12),
    "D4": (("a", "b"), ("a^4", "b^2", "b a b a"), 8),
    "Q8": (("a", "b"), ("a^4", "a^2 b^-2", "b^-1 a b a"), 8),
    "Z2xZ2": (("a", "b"), ("a^2", "b^2", "a^-1 b^-1 a b"), 4),
    "redundant": (("a", "b"), ("a b^-1", "a^3"), 3),
}


def pres(name):
    gens, rels, _ = FIXTURES[name]
    return Presentation.make([Plain(g) for g in gens], [parse_word(r) for r in rels])


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_orders(name):
    assert len(todd_coxeter(pres(name))) == FIXTURES[name][2]


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_table_is_consistent(name):
    p = pres(name)
    t = todd_coxeter(p)
    n = len(t)
    for k, g in enumerate(p.generators):
        fwd = [row[2 * k] for row in t.rows]
        back = [row[2 * k + 1] for row in t.rows]
        assert sorted(fwd) == list(range(n))
        assert all(back[fwd[c]] == c for c in range(n))
    for r in p.relators:
        assert all(t.act(c, r) == c for c in range(n))


def test_overflow():
    with pytest.raises(Overflow):
        todd_coxeter(Presentation.make([Plain("a")], []), max_cosets=1000)
    with pytest.raises(Overflow):
        todd_coxeter(Presentation.make([Plain("a"), Plain("b")], [parse_word("a^2")]), max_cosets=500)


def test_s3_matches_permutation_group():
    G = to_finite_group(todd_coxeter(pres("S3")))
    assert not G.is_abelian()
    perms = list(itertools.permutations(range(3)))
    # element orders multiset of Sym(3): 1, 2, 2, 2, 3, 3
    def order(p):
        k, q = 1, p
        while q != tuple(range(3)):
            q = tuple(p[i] for i in q)
            k += 1
        return k
    assert sorted(G.element_order(x) for x in range(6)) == sorted(order(p) for p in perms)


def test_to_finite_group_examples():
    triv = to_finite_group(todd_coxeter(pres("trivial")))
    assert triv.order == 1 and triv.table.tolist() == [[0]]
    z2 = to_finite_group(todd_coxeter(pres("Z2")))
    assert z2.table.tolist() == [[0, 1], [1, 0]]
    s3 = to_finite_group(todd_coxeter(pres("S3")))
    a, b = 1, 2  # BFS labels the images of a and b first
    assert s3.mul(a, b) != s3.mul(b, a)


def test_not_closed():
    t = CosetTable((Plain("a"),), ((0, 0),), closed=False)
    with pytest.raises(NotClosed):
        to_finite_group(t)


def test_representatives_reach_their_coset():
    t = todd_coxeter(pres("Z3:Z4"))
    reps = representatives(t)
    assert [t.act(0, w) for w in reps] == list(range(len(t)))


def test_deterministic():
    assert todd_coxeter(pres("Q8")) == todd_coxeter(pres("Q8"))
