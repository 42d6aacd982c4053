import random

import pytest
from hypothesis import given, settings, strategies as st

from linhyp import (Gen, Id, ParseError, Seq, Swap, Tensor, Trace,
                    TypeMismatch, global_trace_form, parse_signature,
                    parse_term, render_term, signature, stage, type_of, word)
from linhyp.interp import interpret
from linhyp.graphs import find_isomorphism
from linhyp.laws import law_signature, random_term
from linhyp.terms import SignatureError, is_trace_free

SIG = law_signature()

terms = st.builds(
    lambda seed, m, n: random_term(random.Random(seed), SIG, m, n),
    st.integers(0, 10**9), st.integers(0, 2), st.integers(0, 2))


def test_parse_tensor_binds_tighter(gsig):
    t = parse_term("f * g ; h", gsig)
    assert t == Seq(Tensor(Gen("f"), Gen("g")), Gen("h"))


def test_parse_identity_literal(sig):
    assert parse_term("id 3", sig) == Id(word(3))


def test_parse_traced_example():
    sig = signature({"join": (2, 1), "f": (1, 1), "copy": (1, 2)})
    t = parse_term("tr 1 (join * f ; swap 1 1 ; copy * id 1)", sig)
    assert t == Trace(word(1), Seq(
        Seq(Tensor(Gen("join"), Gen("f")), Swap(word(1), word(1))),
        Tensor(Gen("copy"), Id(word(1)))))
    assert type_of(t, sig) == (word(2), word(2))


def test_parse_reports_position(sig):
    with pytest.raises(ParseError) as err:
        parse_term("f ; ; g", sig)
    assert "position 4" in str(err.value)


def test_parse_unknown_generator(sig):
    with pytest.raises(TypeMismatch):
        parse_term("nosuch", sig)


def test_parse_type_mismatch_at_seq(sig):
    with pytest.raises(TypeMismatch):
        parse_term("g ; g", sig)  # 1->2 then 1->2


def test_parse_type_mismatch_at_trace(sig):
    with pytest.raises(TypeMismatch):
        parse_term("tr 1 (u)", sig)  # body 0->1 has no first input to loop


@given(terms)
@settings(max_examples=80, deadline=None)
def test_render_parse_round_trip(t):
    assert parse_term(render_term(t), SIG) == t


@given(terms)
@settings(max_examples=60, deadline=None)
def test_type_stable_under_render(t):
    again = parse_term(render_term(t), SIG)
    assert type_of(again, SIG) == type_of(t, SIG)


def test_type_of_tensor(sig):
    t = Tensor(Gen("f"), Gen("g"))
    assert type_of(t, sig) == (word(2), word(3))


def test_type_of_unit(sig):
    assert type_of(Id(0), sig) == ((), ())


def test_type_of_traced_swap(sig):
    assert type_of(Trace(1, Swap(1, 1)), sig) == (word(1), word(1))


def test_generalised_words(gsig):
    t = parse_term("f * g ; h", gsig)
    assert type_of(t, gsig) == (("A", "B"), ("C", "D"))
    t2 = parse_term("id [A,B]", gsig)
    assert type_of(t2, gsig) == (("A", "B"), ("A", "B"))


def test_signature_rejects_undeclared_object():
    with pytest.raises(SignatureError):
        from linhyp.terms import Signature
        Signature({"f": (("A",), ("B",))}, frozenset({"A"}))


def test_signature_rejects_reserved_names():
    with pytest.raises(SignatureError):
        signature({"tr": (1, 1)})
    with pytest.raises(SignatureError):
        signature({"@id": (1, 1)})


def test_parse_signature_file():
    text = """
    # circuit generators
    f : 1 -> 1
    h : [B,A] -> [C,D]
    """
    sig = parse_signature(text)
    assert sig.dom("f") == word(1)
    assert sig.cod("h") == ("C", "D")


def test_stage_single_generator(sig):
    assert stage(Gen("f"), sig) == Gen("f")


def test_stage_tensor_shape(sig):
    st_ = stage(Tensor(Gen("f"), Gen("g")), sig)
    assert st_ == Seq(Tensor(Gen("f"), Id(word(1))),
                      Tensor(Id(word(1)), Gen("g")))


def test_stage_bifunctorial_four_slices(sig):
    t = Seq(Tensor(Gen("f"), Gen("g")), Tensor(Gen("f"), Gen("h")))
    staged = stage(t, sig)
    # a chain of four one-box slices
    slices = []
    cur = staged
    while isinstance(cur, Seq):
        slices.append(cur.right)
        cur = cur.left
    slices.append(cur)
    assert len(slices) == 4
    assert find_isomorphism(interpret(staged, sig), interpret(t, sig))


def test_stage_rejects_traces(sig):
    with pytest.raises(TypeMismatch):
        stage(Trace(1, Gen("h")), sig)


@given(st.builds(
    lambda seed, m, n: random_term(random.Random(seed), SIG, m, n,
                                   traces=False),
    st.integers(0, 10**9), st.integers(0, 2), st.integers(0, 2)))
@settings(max_examples=40, deadline=None)
def test_stage_preserves_meaning(t):
    staged = stage(t, SIG)
    assert find_isomorphism(interpret(staged, SIG), interpret(t, SIG))


def test_global_trace_form_nested(sig):
    t = Trace(1, Trace(1, Gen("h")))
    x, body = global_trace_form(t, sig)
    assert len(x) == 2 and is_trace_free(body)
    assert find_isomorphism(interpret(Trace(x, body), sig),
                            interpret(t, sig))


def test_global_trace_form_trace_free(sig):
    t = Tensor(Gen("f"), Gen("g"))
    assert global_trace_form(t, sig) == ((), t)


def test_global_trace_form_sandwich(sig):
    t = Seq(Seq(Gen("f"), Trace(1, Gen("h"))), Gen("f"))
    x, body = global_trace_form(t, sig)
    assert len(x) == 1 and is_trace_free(body)
    assert find_isomorphism(interpret(Trace(x, body), sig),
                            interpret(t, sig))


@given(terms)
@settings(max_examples=60, deadline=None)
def test_global_trace_form_meaning(t):
    x, body = global_trace_form(t, SIG)
    assert is_trace_free(body)
    assert find_isomorphism(interpret(Trace(x, body), SIG),
                            interpret(t, SIG))
