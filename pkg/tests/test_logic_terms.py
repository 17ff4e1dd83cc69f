import pytest

from latkit.constructions import chain, fixture
from latkit.errors import (CapacityExceeded, NotPositiveUniversal, SentenceSyntaxError,
                           SignatureError, UnboundVariable, UnsupportedOperation)
from latkit.logic_terms import (ONE, BinOp, Var, builtin_kclass, eval_term, holds, make_kclass,
                                parse_sentence, parse_term, pre_transform, print_sentence,
                                print_term)
from latkit.residuated import enumerate_rls


def test_parse_kinds():
    s = parse_sentence("x <= y | y <= x", "lattice")
    assert s.kind == "positive_universal" and len(s.atoms) == 2
    assert parse_sentence("x <= 1 | 1 <= x").kind == "positive_universal"
    assert parse_sentence("x ^ y = y", "lattice").kind == "equation"
    q = parse_sentence("1 ^ x = 1 ^ y & 1 v x = 1 v y => x = y", "lattice")
    assert q.kind == "quasi_equation" and len(q.atoms) == 2


def test_precedence():
    t = parse_term("x v y ^ z * w")
    assert t == BinOp("join", Var("x"), BinOp("meet", Var("y"), BinOp("mul", Var("z"), Var("w"))))
    assert parse_term("1 ^ x\\y") == BinOp("meet", ONE, BinOp("ldiv", Var("x"), Var("y")))


def test_variables_numbered_by_first_occurrence():
    assert parse_sentence("y <= x | x <= z").variables() == ["y", "x", "z"]


def test_errors():
    with pytest.raises(SentenceSyntaxError):
        parse_sentence("x <= (y v", "lattice")
    with pytest.raises(SignatureError):
        parse_sentence("x * y = y", "lattice")
    with pytest.raises(CapacityExceeded):
        holds(chain(2), parse_sentence("a ^ b ^ c ^ d ^ e ^ f ^ g = a", "lattice"))


def test_eval(n5_left, boolean2):
    assert eval_term(n5_left, ONE, {}) == n5_left.unit
    assert eval_term(n5_left, parse_term("x ^ y"), {"x": 1, "y": 3}) == 0
    assert eval_term(boolean2, parse_term("x \\ y"), {"x": 1, "y": 0}) == 0
    with pytest.raises(UnboundVariable):
        eval_term(n5_left, parse_term("x ^ y"), {"x": 1})
    with pytest.raises(UnsupportedOperation):
        eval_term(n5_left, parse_term("x * y"), {"x": 1, "y": 1})


def test_holds_examples(n5_left, n5_unital):
    assert holds(chain(3), parse_sentence("x <= y | y <= x")).holds
    r = holds(n5_left, parse_sentence("1 ^ x = 1 ^ y & 1 v x = 1 v y => x = y", "lattice"))
    assert not r.holds and {r.witness["x"], r.witness["y"]} == {2, 3}
    r = holds(n5_unital, parse_sentence("x1 v x2 >= 1 => (x1 ^ z) v (x2 ^ z) >= 1 ^ z", "lattice"))
    assert not r.holds
    x1, x2, z = r.witness["x1"], r.witness["x2"], r.witness["z"]
    L = n5_unital.lattice
    assert L.join[x1][x2] == L.top and not L.leq(L.meet[L.top][z], L.join[L.meet[x1][z]][L.meet[x2][z]])


def test_pre_transform():
    lin = pre_transform(parse_sentence("x <= y | y <= x"))
    assert print_sentence(lin) == "(1 ^ x\\y) v (1 ^ y\\x) = 1"
    conic = pre_transform(parse_sentence("x <= 1 | 1 <= x"))
    assert print_sentence(conic) == "(1 ^ x\\1) v (1 ^ x) = 1"
    assert print_sentence(pre_transform(parse_sentence("x <= x"))) == "1 ^ x\\x = 1"
    with pytest.raises(NotPositiveUniversal):
        pre_transform(parse_sentence("x = y => x <= y"))
    with pytest.raises(NotPositiveUniversal):
        pre_transform(parse_sentence("x * y <= y | y <= x"))


def test_pre_of_equation_uses_join_below_meet():
    s = pre_transform(parse_sentence("x ^ y = x", "lattice"))
    assert print_sentence(s) == "1 ^ ((x ^ y) v x)\\(x ^ y ^ x) = 1"


def test_kclasses(pointed6, rls4):
    assert builtin_kclass("conic").contains(chain(3, 1))
    assert not builtin_kclass("conic").contains(fixture("n5_left_pointed"))
    assert builtin_kclass("all").contains(fixture("m3_unital"))
    with pytest.raises(NotPositiveUniversal):
        make_kclass("bad", ["x = y => x <= y"])
    # reduct in K implies left pre-K
    for name in ("integral", "conic", "linear", "distributive"):
        K = builtin_kclass(name)
        pres = [pre_transform(ax) for ax in K.axioms]
        for R in rls4:
            if K.contains(R.base):
                assert all(holds(R, p).holds for p in pres)


def test_holds_monotone_under_sublattices(pointed6):
    from itertools import combinations
    from latkit.core_order import is_sublattice, sublattice
    sentences = [parse_sentence(t, "lattice") for t in
                 ("x <= y | y <= x", "x <= 1 | 1 <= x", "x ^ (y v z) = (x ^ y) v (x ^ z)",
                  "1 ^ (x v y) = (1 ^ x) v (1 ^ y)")]
    for A in pointed6[:40]:
        for r in range(1, A.size):
            for S in combinations(range(A.size), r):
                mask = sum(1 << s for s in S)
                if not (mask >> A.unit) & 1 or not is_sublattice(A.lattice, mask):
                    continue
                B, _ = sublattice(A, mask)
                for s in sentences:
                    if holds(A, s).holds:
                        assert holds(B, s).holds
