"""Property-based checks with hypothesis."""
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from latkit.cancellative import _tau_array, build_encoding, fragment
from latkit.cli_io import parse_algebra_text, write_algebra_text
from latkit.congruence import all_congruences, generated_congruence
from latkit.core_order import canonical_form, is_isomorphic, structural_class
from latkit.enumeration import pointed_up_to
from latkit.logic_terms import (ONE, Atom, BinOp, Sentence, Var, holds, parse_sentence,
                                print_sentence)
from latkit.residuated import enumerate_all_rls, residuation_violation

POINTED = list(pointed_up_to(6))
RLS = list(enumerate_all_rls(4))
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

pointed = st.sampled_from(POINTED)
rls = st.sampled_from(RLS)


@st.composite
def relabelled(draw):
    A = draw(pointed)
    order = draw(st.permutations(range(A.size)))
    return A, A.relabel(list(order))


@SETTINGS
@given(relabelled())
def test_relabel_invariance(pair):
    A, B = pair
    assert canonical_form(A.lattice, A.unit)[0] == canonical_form(B.lattice, B.unit)[0]
    assert is_isomorphic(A, B) is not None
    for cls in ("conic", "distributive", "prime_pointed", "integral"):
        assert structural_class(A, cls) == structural_class(B, cls)
    assert len(all_congruences(A)) == len(all_congruences(B))


@SETTINGS
@given(pointed, st.data())
def test_generated_congruence_is_least(A, data):
    pairs = data.draw(st.lists(st.tuples(st.integers(0, A.size - 1), st.integers(0, A.size - 1)),
                               max_size=3))
    th = generated_congruence(A, pairs)
    assert all(th.same(a, b) for a, b in pairs)
    for c in all_congruences(A):
        if all(c.same(a, b) for a, b in pairs):
            assert th <= c


VARS = ("x", "y", "z", "w")


def terms(ops):
    leaves = st.one_of(st.just(ONE), st.sampled_from(VARS).map(Var))
    return st.recursive(leaves, lambda t: st.builds(BinOp, st.sampled_from(ops), t, t),
                        max_leaves=6)


@st.composite
def sentences(draw, ops=("meet", "join", "mul", "ldiv", "rdiv")):
    t = terms(ops)
    atom = st.builds(Atom, t, st.sampled_from(("<=", "=")), t)
    kind = draw(st.sampled_from(("equation", "positive_universal", "quasi_equation")))
    if kind == "equation":
        return Sentence(kind, (draw(st.builds(Atom, t, st.just("="), t)),))
    if kind == "positive_universal":
        atoms = draw(st.lists(atom, min_size=1, max_size=3))
        if len(atoms) == 1 and atoms[0].rel == "=":
            return Sentence("equation", tuple(atoms))
        return Sentence(kind, tuple(atoms))
    return Sentence(kind, tuple(draw(st.lists(atom, min_size=1, max_size=3))), draw(atom))


@settings(max_examples=300, deadline=None)
@given(sentences())
def test_print_parse_roundtrip(s):
    text = print_sentence(s)
    back = parse_sentence(text)
    assert back == s
    assert print_sentence(back) == text


@SETTINGS
@given(st.sampled_from(POINTED + RLS))
def test_file_roundtrip(alg):
    text = write_algebra_text(alg)
    back = parse_algebra_text(text)
    assert write_algebra_text(back) == text


@SETTINGS
@given(rls)
def test_residuation(R):
    assert residuation_violation(R) is None


@SETTINGS
@given(pointed, sentences(("meet", "join")))
def test_sentences_respected_by_isomorphism(A, s):
    order = list(reversed(range(A.size)))
    B = A.relabel(order)
    if len(s.variables()) <= 3:
        assert holds(A, s).holds == holds(B, s).holds


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([L for L in pointed_up_to(5) if L.size >= 2]))
def test_tau_is_interior(A):
    enc = build_encoding(A.lattice)
    S = fragment(enc, 4)
    T = _tau_array(enc, S)
    assert (T <= S).all()
    assert (_tau_array(enc, T) == T).all()
