import json
from math import gcd

import pytest
from hypothesis import given

from surfbraid.errors import StrategyUnavailable
from surfbraid.presentations import (
    CosetTableStrategy, DirectPowerOfFree, FreeReduction, GroupHom, Presentation,
    RewriteSystemStrategy, abelian_invariants, abelianization_matrix, check_hom, compose,
    free_presentation,
)
from surfbraid.rewrite import kb_complete
from surfbraid.todd_coxeter import todd_coxeter
from surfbraid.words import Plain, Word, commutator, parse_word

from conftest import words

a, b, x, y = Plain("a"), Plain("b"), Plain("x"), Plain("y")


def P(gens, *rels):
    return Presentation.make([Plain(g) for g in gens.split()], [parse_word(r) for r in rels])


def test_validation():
    with pytest.raises(ValueError):
        Presentation((a, a), ())
    with pytest.raises(ValueError):
        Presentation((a,), (Word.gen(b),))
    with pytest.raises(ValueError):
        Presentation((a, b), (parse_word("a b a^-1"),))


def test_make_cleans_relators():
    p = Presentation.make([a, b], [parse_word("a b a^-1"), parse_word("a a^-1"),
                                   parse_word("b"), parse_word("b^-1")], dedupe=True)
    assert p.relators == (Word.gen(b),)


def test_json_roundtrip():
    p = P("a b", "a^2", "a b a^-1 b^-1")
    q = Presentation.from_json(json.loads(p.dumps()))
    assert q == p
    assert set(p.to_json()) == {"generators", "relators", "provenance"}


def test_hom_examples():
    src, tgt = P("a", "a^2"), P("b", "b^2")
    h = GroupHom(src, tgt, {a: Word.gen(b)})
    assert check_hom(h, RewriteSystemStrategy(kb_complete(tgt.relators))).well_defined

    free2 = free_presentation([x, y])
    h = GroupHom(P("a"), free2, {a: parse_word("x y x^-1")})
    assert check_hom(h, FreeReduction()).well_defined

    h = GroupHom(P("a", "a^2"), free_presentation([x]), {a: Word.gen(x)})
    cert = check_hom(h, FreeReduction())
    assert not cert.well_defined and cert.failing_relator == parse_word("a^2")
    assert cert.to_json()["failing_relator"] == "a a"


def test_hom_totality():
    with pytest.raises(ValueError):
        GroupHom(P("a b"), P("x"), {a: Word.gen(x)})
    with pytest.raises(ValueError):
        GroupHom(P("a"), P("x"), {a: Word.gen(y)})


def test_free_reduction_refuses_relators():
    with pytest.raises(StrategyUnavailable):
        check_hom(GroupHom(P("a"), P("x", "x^2"), {a: Word.gen(x)}), FreeReduction())


def test_direct_power_strategy():
    x1, x2, y1 = Plain("x", 1, 1), Plain("x", 1, 2), Plain("y", 1, 1)
    s = DirectPowerOfFree({x1: 1, x2: 2, y1: 1})
    assert s.is_identity(commutator(x1, x2))
    assert not s.is_identity(commutator(x1, y1))
    with pytest.raises(StrategyUnavailable):
        s.is_identity(Word.gen(Plain("z")))
    # eliminated generator is rewritten before projecting
    e = DirectPowerOfFree({x1: 1}, {y1: Word.gen(x1, 2)})
    assert e.is_identity(parse_word("y[1]@1 x[1]@1^-1 x[1]@1^-1"))


def test_coset_table_strategy():
    s = CosetTableStrategy(todd_coxeter(P("a b", "a^2", "b^2", "a b a b a b")))
    assert s.is_identity(parse_word("a b a b a b"))
    assert not s.is_identity(parse_word("a b"))
    assert s.equal(parse_word("a b a"), parse_word("b a b"))


def test_compose():
    h1 = GroupHom(P("a"), P("x y"), {a: parse_word("x y")})
    h2 = GroupHom(P("x y"), P("b"), {x: Word.gen(b), y: Word.gen(b, -1)})
    assert compose(h1, h2).images[a].is_identity()


def test_abelianization_examples():
    assert abelianization_matrix(P("x y", "x^-1 y^-1 x y")).to_list() == [[0, 0]]
    m = abelianization_matrix(Presentation.make([Plain("A", 1), Plain("rho", 1)],
                                                [parse_word("rho[1] rho[1] A[1]^-1")]))
    assert m.to_list() == [[-1, 2]]
    assert abelianization_matrix(P("x y")).rows == 0
    assert abelian_invariants(P("x y", "x^-1 y^-1 x y")) == (2, [])
    assert abelian_invariants(P("a", "a^2")) == (0, [2])
    assert abelian_invariants(P("a b", "a^2", "b^3", "a^-1 b^-1 a b")) == (0, [6])
    assert abelian_invariants(P("a b", "a^4", "b^6")) == (0, [2, 12])


@given(words())
def test_abelian_invariants_one_relator(w):
    # <a,b,c | w>: rank drops by one exactly when w has nonzero exponent sums
    p = Presentation.make([a, b, Plain("c")], [w])
    sums = [w.exponent_sum(s) for s in (a, b, Plain("c"))]
    rank, torsion = abelian_invariants(p)
    g = gcd(*sums)
    assert rank == (3 if g == 0 else 2)
    assert torsion == ([g] if g > 1 else [])
