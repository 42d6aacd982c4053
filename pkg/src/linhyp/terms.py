"""Terms of a freely generated traced monoidal theory.

A term is a syntax tree built from named generators, identities, wire
swaps, sequential composition, tensor and trace.  Objects are *words*:
tuples of object labels.  A plain arity ``n`` is the word made of ``n``
anonymous labels, so numeric wire counts and labelled wires share one
code path.
"""
from __future__ import annotations

from dataclasses import dataclass

Word = tuple[str, ...]

#: Object label used for unlabelled wires.  Reserved: user signatures may
#: not declare it as an object.
ANON = "_"


def word(n: int) -> Word:
    """The word of ``n`` anonymous wires."""
    if n < 0:
        raise ValueError(f"negative arity {n}")
    return (ANON,) * n


def as_word(w: int | str | Word) -> Word:
    """Coerce an int (wire count), label or tuple of labels to a word."""
    if isinstance(w, int):
        return word(w)
    if isinstance(w, str):
        return (w,)
    return tuple(w)


def render_word(w: Word) -> str:
    """Inverse of the DSL word syntax: ``3`` or ``[A,B,C]``."""
    if all(x == ANON for x in w):
        return str(len(w))
    return "[" + ",".join(w) + "]"


class TermError(Exception):
    """Base class for term-level failures."""


class ParseError(TermError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class TypeMismatch(TermError):
    def __init__(self, message: str, subterm: "Term | None" = None):
        super().__init__(message)
        self.subterm = subterm


class SignatureError(TermError):
    pass


@dataclass(frozen=True)
class Signature:
    """Generator names with domain and codomain words.

    ``objects`` lists the declared object labels.  For plain arity-based
    signatures it is just ``{ANON}``.
    """

    generators: dict[str, tuple[Word, Word]]
    objects: frozenset[str] = frozenset({ANON})

    def __post_init__(self) -> None:
        objects = set(self.objects) | {ANON}
        for name, (dom, cod) in self.generators.items():
            if name in _RESERVED_NAMES:
                raise SignatureError(f"generator name {name!r} is reserved")
            for label in (*dom, *cod):
                if label not in objects:
                    raise SignatureError(
                        f"generator {name!r} uses undeclared object {label!r}"
                    )
        object.__setattr__(self, "objects", frozenset(objects))

    def dom(self, name: str) -> Word:
        return self.generators[name][0]

    def cod(self, name: str) -> Word:
        return self.generators[name][1]

    def __contains__(self, name: str) -> bool:
        return name in self.generators


def signature(gens: dict[str, tuple[int | str | Word, int | str | Word]],
              objects: set[str] | None = None) -> Signature:
    """Convenience builder accepting ints and label strings for words."""
    norm = {n: (as_word(d), as_word(c)) for n, (d, c) in gens.items()}
    objs = set(objects) if objects is not None else set()
    for d, c in norm.values():
        objs.update(d)
        objs.update(c)
    return Signature(norm, frozenset(objs | {ANON}))


class Term:
    """Base class; subclasses form the syntax tree."""

    __slots__ = ()

    def __rshift__(self, other: "Term") -> "Seq":
        return Seq(self, other)

    def __matmul__(self, other: "Term") -> "Tensor":
        return Tensor(self, other)

    def __repr__(self) -> str:
        return f"<{render_term(self)}>"


@dataclass(frozen=True, repr=False)
class Gen(Term):
    name: str


@dataclass(frozen=True, repr=False)
class Id(Term):
    word: Word

    def __post_init__(self) -> None:
        object.__setattr__(self, "word", as_word(self.word))


@dataclass(frozen=True, repr=False)
class Swap(Term):
    upper: Word
    lower: Word

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", as_word(self.upper))
        object.__setattr__(self, "lower", as_word(self.lower))


@dataclass(frozen=True, repr=False)
class Seq(Term):
    left: Term
    right: Term


@dataclass(frozen=True, repr=False)
class Tensor(Term):
    top: Term
    bottom: Term


@dataclass(frozen=True, repr=False)
class Trace(Term):
    loop: Word
    body: Term

    def __post_init__(self) -> None:
        object.__setattr__(self, "loop", as_word(self.loop))


# "@id" is the label graphs use for invisible identity edges
_RESERVED_NAMES = frozenset({"id", "swap", "tr", "@id"})


def type_of(t: Term, sig: Signature) -> tuple[Word, Word]:
    """Domain and codomain words of ``t``, raising on ill-typed nodes."""
    if isinstance(t, Gen):
        if t.name not in sig:
            raise TypeMismatch(f"unknown generator {t.name!r}", t)
        return sig.generators[t.name]
    if isinstance(t, Id):
        return t.word, t.word
    if isinstance(t, Swap):
        return t.upper + t.lower, t.lower + t.upper
    if isinstance(t, Seq):
        ld, lc = type_of(t.left, sig)
        rd, rc = type_of(t.right, sig)
        if lc != rd:
            raise TypeMismatch(
                f"cannot compose {render_word(lc)} with {render_word(rd)}"
                f" in {render_term(t)}", t)
        return ld, rc
    if isinstance(t, Tensor):
        td, tc = type_of(t.top, sig)
        bd, bc = type_of(t.bottom, sig)
        return td + bd, tc + bc
    if isinstance(t, Trace):
        d, c = type_of(t.body, sig)
        x = t.loop
        if d[:len(x)] != x or c[:len(x)] != x:
            raise TypeMismatch(
                f"trace over {render_word(x)} needs a body typed"
                f" {render_word(x)}+m -> {render_word(x)}+n,"
                f" got {render_word(d)} -> {render_word(c)}", t)
        return d[len(x):], c[len(x):]
    raise TypeMismatch(f"not a term: {t!r}", t)


def is_trace_free(t: Term) -> bool:
    if isinstance(t, Trace):
        return False
    if isinstance(t, Seq):
        return is_trace_free(t.left) and is_trace_free(t.right)
    if isinstance(t, Tensor):
        return is_trace_free(t.top) and is_trace_free(t.bottom)
    return True


# ---------------------------------------------------------------------------
# Concrete syntax
#
#   term := seq
#   seq  := ten (";" ten)*
#   ten  := atom ("*" atom)*
#   atom := NAME | "id" WORD | "swap" WORD WORD | "tr" WORD "(" term ")"
#         | "(" term ")"
#   WORD := NAT | "[" (NAME ("," NAME)*)? "]"
# ---------------------------------------------------------------------------

_SYMBOLS = {";", "*", "(", ")", "[", "]", ","}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens as (kind, value, position); kind in name/nat/sym."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(("sym", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("nat", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> tuple[str, str, int]:
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def _expect(self, value: str) -> None:
        tok = self._next()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", tok[2])

    def term(self) -> Term:
        t = self.tensor()
        while True:
            tok = self._peek()
            if tok is None or tok[1] != ";":
                return t
            self._next()
            t = Seq(t, self.tensor())

    def tensor(self) -> Term:
        t = self.atom()
        while True:
            tok = self._peek()
            if tok is None or tok[1] != "*":
                return t
            self._next()
            t = Tensor(t, self.atom())

    def word(self) -> Word:
        tok = self._next()
        if tok[0] == "nat":
            return word(int(tok[1]))
        if tok[1] == "[":
            labels: list[str] = []
            nxt = self._peek()
            if nxt is not None and nxt[1] == "]":
                self._next()
                return ()
            while True:
                name = self._next()
                if name[0] != "name":
                    raise ParseError("expected object label", name[2])
                labels.append(name[1])
                sep = self._next()
                if sep[1] == "]":
                    return tuple(labels)
                if sep[1] != ",":
                    raise ParseError("expected ',' or ']'", sep[2])
        raise ParseError("expected a wire count or [labels]", tok[2])

    def atom(self) -> Term:
        tok = self._next()
        if tok[1] == "(":
            t = self.term()
            self._expect(")")
            return t
        if tok[1] == "id":
            return Id(self.word())
        if tok[1] == "swap":
            return Swap(self.word(), self.word())
        if tok[1] == "tr":
            loop = self.word()
            self._expect("(")
            body = self.term()
            self._expect(")")
            return Trace(loop, body)
        if tok[0] == "name":
            return Gen(tok[1])
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])

    def finish(self) -> None:
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])


def parse_term(text: str, sig: Signature) -> Term:
    """Parse DSL text and type-check it against ``sig``."""
    parser = _Parser(text)
    t = parser.term()
    parser.finish()
    type_of(t, sig)
    return t


def render_term(t: Term) -> str:
    """Print a term so that parsing the output rebuilds the same tree.

    Left-nested chains print flat (the parser folds left); right-nested
    composition and tensor keep their parentheses.
    """
    if isinstance(t, Seq):
        left = render_term(t.left)
        right = render_term(t.right)
        if isinstance(t.right, Seq):
            right = f"({right})"
        return f"{left} ; {right}"
    if isinstance(t, Tensor):
        top = render_term(t.top)
        if isinstance(t.top, Seq):
            top = f"({top})"
        bottom = render_term(t.bottom)
        if isinstance(t.bottom, (Seq, Tensor)):
            bottom = f"({bottom})"
        return f"{top} * {bottom}"
    if isinstance(t, Gen):
        return t.name
    if isinstance(t, Id):
        return f"id {render_word(t.word)}"
    if isinstance(t, Swap):
        return f"swap {render_word(t.upper)} {render_word(t.lower)}"
    if isinstance(t, Trace):
        return f"tr {render_word(t.loop)} ({render_term(t.body)})"
    raise TermError(f"not a term: {t!r}")


def parse_signature(text: str) -> Signature:
    """Signature file: one ``name : WORD -> WORD`` line per generator."""
    gens: dict[str, tuple[Word, Word]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            name_part, arrow_part = line.split(":", 1)
            dom_part, cod_part = arrow_part.split("->", 1)
        except ValueError:
            raise SignatureError(f"line {lineno}: expected 'name : WORD -> WORD'")
        name = name_part.strip()
        if not name or name in gens:
            raise SignatureError(f"line {lineno}: bad or duplicate name {name!r}")
        gens[name] = (_parse_word(dom_part.strip(), lineno),
                      _parse_word(cod_part.strip(), lineno))
    return Signature(gens, frozenset(
        {lab for d, c in gens.values() for lab in (*d, *c)} | {ANON}))


def _parse_word(text: str, lineno: int) -> Word:
    if text.isdigit():
        return word(int(text))
    if text.startswith("[") and text.endswith("]"):
        inner = text[1:-1].strip()
        if not inner:
            return ()
        return tuple(part.strip() for part in inner.split(","))
    raise SignatureError(f"line {lineno}: bad word {text!r}")


# ---------------------------------------------------------------------------
# Normal-form helpers
# ---------------------------------------------------------------------------

def _norm_atom(t: Term) -> Term:
    if isinstance(t, Swap):
        if t.upper == ():
            return Id(t.lower)
        if t.lower == ():
            return Id(t.upper)
    return t


def _smart_tensor(parts: list[Term]) -> Term:
    flat: list[Term] = []
    for p in parts:
        p = _norm_atom(p)
        if isinstance(p, Id) and p.word == ():
            continue
        if flat and isinstance(flat[-1], Id) and isinstance(p, Id):
            flat[-1] = Id(flat[-1].word + p.word)
        else:
            flat.append(p)
    if not flat:
        return Id(())
    t = flat[0]
    for p in flat[1:]:
        t = Tensor(t, p)
    return t


def _smart_seq(parts: list[Term], dom: Word) -> Term:
    parts = [p for p in parts if not isinstance(p, Id)]
    if not parts:
        return Id(dom)
    t = parts[0]
    for p in parts[1:]:
        t = Seq(t, p)
    return t


def stage(t: Term, sig: Signature) -> Term:
    """Rewrite a trace-free term as a chain of one-box slices.

    Each slice is ``Id(m) * k * Id(n)`` with a single non-identity ``k``
    (a generator or a swap); trivial padding is dropped.  The result is
    equal to ``t`` modulo the traced monoidal equations.
    """
    if not is_trace_free(t):
        raise TypeMismatch("stage requires a trace-free term", t)
    dom, _ = type_of(t, sig)

    def slices(u: Term) -> list[tuple[Word, Term, Word]]:
        if isinstance(u, Id):
            return []
        if isinstance(u, (Gen, Swap)):
            return [((), u, ())]
        if isinstance(u, Seq):
            return slices(u.left) + slices(u.right)
        if isinstance(u, Tensor):
            td, tc = type_of(u.top, sig)
            bd, bc = type_of(u.bottom, sig)
            top = [(m, k, n + bd) for (m, k, n) in slices(u.top)]
            bottom = [(tc + m, k, n) for (m, k, n) in slices(u.bottom)]
            return top + bottom
        raise TypeMismatch(f"cannot stage {u!r}", u)

    def materialize(m: Word, k: Term, n: Word) -> Term:
        return _smart_tensor([Id(m), k, Id(n)])

    return _smart_seq([materialize(*s) for s in slices(t)], dom)


def global_trace_form(t: Term, sig: Signature) -> tuple[Word, Term]:
    """Pull every trace in ``t`` to a single outermost one.

    Returns ``(x, body)`` with ``body`` trace-free and ``Trace(x, body)``
    equal to ``t`` modulo the traced monoidal equations.
    """
    type_of(t, sig)

    def go(u: Term) -> tuple[Word, Term]:
        if isinstance(u, (Gen, Id, Swap)):
            return (), u
        if isinstance(u, Trace):
            x, body = go(u.body)
            return x + u.loop, body
        if isinstance(u, Seq):
            p, f = go(u.left)
            q, g = go(u.right)
            m, k = type_of(u.left, sig)
            # f : p+m -> p+k, g : q+k -> q+n
            body = _smart_seq([
                _smart_tensor([Id(p), Swap(q, m)]),
                _smart_tensor([f, Id(q)]),
                _smart_tensor([Id(p), Swap(k, q)]),
                _smart_tensor([Id(p), g]),
            ], p + q + m)
            return p + q, body
        if isinstance(u, Tensor):
            p, f = go(u.top)
            q, g = go(u.bottom)
            a, b = type_of(u.top, sig)
            c, d = type_of(u.bottom, sig)
            # f : p+a -> p+b, g : q+c -> q+d
            body = _smart_seq([
                _smart_tensor([Id(p), Swap(q, a), Id(c)]),
                _smart_tensor([f, g]),
                _smart_tensor([Id(p), Swap(b, q), Id(d)]),
            ], p + q + a + c)
            return p + q, body
        raise TypeMismatch(f"not a term: {u!r}", u)

    x, body = go(t)
    type_of(Trace(x, body) if x else body, sig)
    return x, body
