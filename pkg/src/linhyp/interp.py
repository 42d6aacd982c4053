"""Structural translation from terms to linear hypergraphs."""
from __future__ import annotations

from . import ops
from .graphs import LinearHypergraph, find_isomorphism
from .terms import (Gen, Id, Seq, Signature, Swap, Tensor, Term, Trace,
                    TypeMismatch, type_of)


def interpret(t: Term, sig: Signature) -> LinearHypergraph:
    """The graph of a well-typed term.

    Generators become single edges; identity, swap, composition, tensor
    and trace map to the corresponding graph operations.
    """
    if isinstance(t, Gen):
        return ops.generator(t.name, sig)
    if isinstance(t, Id):
        return ops.identity(t.word)
    if isinstance(t, Swap):
        return ops.swap(t.upper, t.lower)
    if isinstance(t, Seq):
        return ops.compose(interpret(t.left, sig), interpret(t.right, sig))
    if isinstance(t, Tensor):
        return ops.tensor(interpret(t.top, sig), interpret(t.bottom, sig))
    if isinstance(t, Trace):
        return ops.trace(t.loop, interpret(t.body, sig))
    raise TypeMismatch(f"not a term: {t!r}", t)


def equal_mod_stmc(s: Term, t: Term, sig: Signature) -> bool:
    """Equality of terms modulo the traced symmetric monoidal equations,
    decided by isomorphism of their graphs."""
    if type_of(s, sig) != type_of(t, sig):
        raise TypeMismatch("terms to compare must share a type")
    return find_isomorphism(interpret(s, sig), interpret(t, sig)) is not None
