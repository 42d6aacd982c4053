"""Digital circuits as a rewrite system over a value lattice.

Circuits are terms over a signature of value constants (0 -> 1), monotone
gates (m -> 1) and the wire bookkeeping morphisms fork, join, stub and
delay.  Gate behaviour is a finite truth table, so every axiom
instantiates to finitely many rewrite rules.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .extract import extract_term
from .graphs import INTERFACE, LinearHypergraph
from .interp import interpret
from .ops import compose as compose_graphs
from .rewrite import RewriteRule, normalize, rule_from_terms
from .terms import Gen, Id, Seq, Signature, Swap, Tensor, Term, Trace, signature

FORK, JOIN, STUB, DELAY = "fork", "join", "stub", "delay"


class _Unproductive:
    def __repr__(self) -> str:
        return "UNPRODUCTIVE"

    def __bool__(self) -> bool:
        return False


#: Returned when reduction does not converge within its budget.
UNPRODUCTIVE = _Unproductive()


class LatticeError(Exception):
    pass


@dataclass(frozen=True)
class ValueLattice:
    """A finite join-semilattice of wire values with a bottom element."""

    values: tuple[str, ...]
    bottom: str
    join_table: dict[tuple[str, str], str]

    def __post_init__(self) -> None:
        vals = self.values
        if self.bottom not in vals:
            raise LatticeError(f"bottom {self.bottom!r} is not a value")
        for a, b in itertools.product(vals, vals):
            if (a, b) not in self.join_table:
                raise LatticeError(f"join undefined on ({a}, {b})")
            if self.join_table[(a, b)] not in vals:
                raise LatticeError(f"join({a}, {b}) is not a value")
        for a in vals:
            if self.join(a, a) != a:
                raise LatticeError(f"join not idempotent at {a}")
            if self.join(self.bottom, a) != a:
                raise LatticeError(f"bottom is not a unit at {a}")
            for b in vals:
                if self.join(a, b) != self.join(b, a):
                    raise LatticeError(f"join not commutative at ({a}, {b})")
                for c in vals:
                    if (self.join(self.join(a, b), c)
                            != self.join(a, self.join(b, c))):
                        raise LatticeError(
                            f"join not associative at ({a}, {b}, {c})")

    def join(self, a: str, b: str) -> str:
        return self.join_table[(a, b)]

    def leq(self, a: str, b: str) -> bool:
        return self.join(a, b) == b


def lattice_from_join(values: list[str], bottom: str, join) -> ValueLattice:
    vals = tuple(values)
    table = {(a, b): join(a, b) for a in vals for b in vals}
    return ValueLattice(vals, bottom, table)


def two_point() -> ValueLattice:
    """{bot, top} ordered bot < top."""
    return lattice_from_join(
        ["bot", "top"], "bot",
        lambda a, b: "top" if "top" in (a, b) else "bot")


def belnap() -> ValueLattice:
    """Four truth values ordered by information: bot < tt, ff < top."""
    def join(a: str, b: str) -> str:
        if a == "bot":
            return b
        if b == "bot":
            return a
        return a if a == b else "top"
    return lattice_from_join(["bot", "tt", "ff", "top"], "bot", join)


@dataclass(frozen=True)
class Gate:
    name: str
    arity: int
    table: dict[tuple[str, ...], str]


def gate_from_fn(name: str, arity: int, fn, lattice: ValueLattice) -> Gate:
    table = {vs: fn(*vs)
             for vs in itertools.product(lattice.values, repeat=arity)}
    return Gate(name, arity, table)


@dataclass(frozen=True)
class CircuitSignature:
    lattice: ValueLattice
    gates: dict[str, Gate]

    def __post_init__(self) -> None:
        fixed = {FORK, JOIN, STUB, DELAY}
        names = set(self.lattice.values) | set(self.gates)
        if len(names) != len(self.lattice.values) + len(self.gates):
            raise LatticeError("value and gate names overlap")
        if names & fixed:
            raise LatticeError(f"names {sorted(names & fixed)} are reserved")
        for gate in self.gates.values():
            self._check_monotone(gate)

    def _check_monotone(self, gate: Gate) -> None:
        lat = self.lattice
        rows = list(itertools.product(lat.values, repeat=gate.arity))
        for row in rows:
            if row not in gate.table or gate.table[row] not in lat.values:
                raise LatticeError(f"gate {gate.name}: bad row {row}")
        for lo, hi in itertools.product(rows, rows):
            if all(lat.leq(a, b) for a, b in zip(lo, hi)):
                if not lat.leq(gate.table[lo], gate.table[hi]):
                    raise LatticeError(
                        f"gate {gate.name} is not monotone: {lo} -> "
                        f"{gate.table[lo]} but {hi} -> {gate.table[hi]}")

    def signature(self) -> Signature:
        gens: dict[str, tuple[int, int]] = {v: (0, 1) for v in self.lattice.values}
        gens.update({g.name: (g.arity, 1) for g in self.gates.values()})
        gens.update({FORK: (1, 2), JOIN: (2, 1), STUB: (1, 0), DELAY: (1, 1)})
        return signature(gens)


# ---------------------------------------------------------------------------
# Derived wiring terms
# ---------------------------------------------------------------------------

def copy_term(n: int) -> Term:
    """``n`` wires duplicated into two aligned buses, built from forks."""
    if n == 0:
        return Id(0)
    if n == 1:
        return Gen(FORK)
    rest = copy_term(n - 1)
    return Seq(Tensor(Gen(FORK), rest),
               Tensor(Tensor(Id(1), Swap(1, n - 1)), Id(n - 1)))


def delete_term(n: int) -> Term:
    if n == 0:
        return Id(0)
    t: Term = Gen(STUB)
    for _ in range(n - 1):
        t = Tensor(t, Gen(STUB))
    return t


def _interleave(n: int) -> Term:
    # [a_0..a_{n-1}, b_0..b_{n-1}]  ->  [a_0, b_0, a_1, b_1, ...]
    if n <= 1:
        return Id(2 * n)
    return Seq(Tensor(Tensor(Id(1), Swap(n - 1, 1)), Id(n - 1)),
               Tensor(Id(2), _interleave(n - 1)))


def merge_term(n: int) -> Term:
    """Pointwise join of two ``n``-buses."""
    if n == 0:
        return Id(0)
    joins: Term = Gen(JOIN)
    for _ in range(n - 1):
        joins = Tensor(joins, Gen(JOIN))
    return Seq(_interleave(n), joins)


def value_row(values: tuple[str, ...] | list[str]) -> Term:
    if not values:
        return Id(0)
    t: Term = Gen(values[0])
    for v in values[1:]:
        t = Tensor(t, Gen(v))
    return t


def _tensor_power(t: Term, n: int) -> Term:
    if n == 0:
        return Id(0)
    out = t
    for _ in range(n - 1):
        out = Tensor(out, t)
    return out


# ---------------------------------------------------------------------------
# Rule families
# ---------------------------------------------------------------------------

def cartesian_rules(csig: CircuitSignature) -> list[RewriteRule]:
    """Copy/delete structure at wire level, oriented left to right.

    Naturality is instantiated per generator of the circuit signature
    (gates, join, delay); the bookkeeping rows are single instances.
    """
    sig = csig.signature()
    rules: list[RewriteRule] = []
    natural = [(g.name, g.arity) for g in csig.gates.values()]
    natural.append((JOIN, 2))
    natural.append((DELAY, 1))
    for name, m in natural:
        rules.append(rule_from_terms(
            Seq(Gen(name), Gen(FORK)),
            Seq(copy_term(m), Tensor(Gen(name), Gen(name))),
            sig, f"copy-nat-{name}"))
        rules.append(rule_from_terms(
            Seq(Gen(name), Gen(STUB)), delete_term(m),
            sig, f"del-nat-{name}"))
    rules.append(rule_from_terms(
        Seq(Gen(FORK), Tensor(Gen(FORK), Id(1))),
        Seq(Gen(FORK), Tensor(Id(1), Gen(FORK))),
        sig, "coassoc"))
    rules.append(rule_from_terms(
        Seq(Gen(FORK), Tensor(Gen(STUB), Id(1))), Id(1), sig, "counit-l"))
    rules.append(rule_from_terms(
        Seq(Gen(FORK), Tensor(Id(1), Gen(STUB))), Id(1), sig, "counit-r"))
    rules.append(rule_from_terms(
        Seq(Gen(FORK), Swap(1, 1)), Gen(FORK), sig, "cocomm"))
    rules.append(rule_from_terms(Id(0), Id(0), sig, "copy-unit"))
    rules.append(rule_from_terms(
        Seq(copy_term(2), Tensor(Tensor(Id(1), Swap(1, 1)), Id(1))),
        Tensor(Gen(FORK), Gen(FORK)),
        sig, "copy-coherence"))
    rules.append(rule_from_terms(Id(0), Id(0), sig, "del-unit"))
    rules.append(rule_from_terms(
        delete_term(2), Tensor(Gen(STUB), Gen(STUB)), sig, "del-coherence"))
    return rules


def circuit_rules(csig: CircuitSignature) -> list[RewriteRule]:
    """Value, gate, delay and garbage-collection rules, one instance per
    value combination."""
    sig = csig.signature()
    lat = csig.lattice
    rules: list[RewriteRule] = []
    for v in lat.values:
        rules.append(rule_from_terms(
            Seq(Gen(v), Gen(FORK)), Tensor(Gen(v), Gen(v)),
            sig, f"fork-{v}"))
    for v, w in itertools.product(lat.values, lat.values):
        rules.append(rule_from_terms(
            Seq(Tensor(Gen(v), Gen(w)), Gen(JOIN)), Gen(lat.join(v, w)),
            sig, f"join-{v}-{w}"))
    for v in lat.values:
        rules.append(rule_from_terms(
            Seq(Gen(v), Gen(STUB)), Id(0), sig, f"stub-{v}"))
    for gate in csig.gates.values():
        for row in itertools.product(lat.values, repeat=gate.arity):
            rules.append(rule_from_terms(
                Seq(value_row(row), Gen(gate.name)), Gen(gate.table[row]),
                sig, f"{gate.name}-" + "-".join(row)))
    rules.append(rule_from_terms(
        Seq(Gen(lat.bottom), Gen(DELAY)), Gen(lat.bottom), sig, "delay-bot"))
    rules.append(rule_from_terms(
        Seq(Gen(DELAY), Gen(STUB)), Gen(STUB), sig, "delay-stub"))
    for gate in csig.gates.values():
        rules.append(rule_from_terms(
            Seq(_tensor_power(Gen(DELAY), gate.arity), Gen(gate.name)),
            Seq(Gen(gate.name), Gen(DELAY)),
            sig, f"delay-{gate.name}"))
        for row in itertools.product(lat.values, repeat=gate.arity):
            lhs = Seq(Seq(
                Tensor(_tensor_power(Gen(DELAY), gate.arity), value_row(row)),
                merge_term(gate.arity)), Gen(gate.name))
            rhs = Seq(
                Tensor(Seq(_tensor_power(Gen(DELAY), gate.arity),
                           Gen(gate.name)),
                       Seq(value_row(row), Gen(gate.name))),
                Gen(JOIN))
            rules.append(rule_from_terms(
                lhs, rhs, sig, f"stream-{gate.name}-" + "-".join(row)))
        rules.append(rule_from_terms(
            Seq(Gen(gate.name), Gen(STUB)), delete_term(gate.arity),
            sig, f"gc-{gate.name}"))
    rules.append(rule_from_terms(
        Seq(Gen(JOIN), Gen(STUB)), Tensor(Gen(STUB), Gen(STUB)),
        sig, "gc-join"))
    return rules


def eval_rules(csig: CircuitSignature) -> list[RewriteRule]:
    """The value-pushing subset used by the evaluator, ordered so value
    reduction always wins over structural rules.

    Streaming and delay-gate commutation instances are axiom-level
    equalities, not reduction steps, so they stay out; rules with an
    empty left side match vacuously and stay out too.
    """
    pushing = [r for r in circuit_rules(csig)
               if not r.name.startswith(("stream-", "delay-"))
               or r.name in ("delay-bot", "delay-stub")]
    structural = [r for r in cartesian_rules(csig)
                  if r.L.targets or r.L.edges]
    return pushing + structural


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def read_value_word(H: LinearHypergraph,
                    csig: CircuitSignature) -> tuple[str, ...] | None:
    """The values feeding the outputs of a fully reduced 0 -> n graph,
    or None when some output is not driven by a value edge."""
    conn_inv = H.conn_inv()
    out: list[str] = []
    tgts, srcs = H.port_tables()
    for s in H.outputs():
        t = conn_inv[s]
        e = H.left[t]
        if e is INTERFACE:
            return None
        lab = H.labels[e]
        if lab not in csig.lattice.values or srcs[e]:
            return None
        out.append(lab)
    return tuple(out)


def evaluate(circuit: Term | LinearHypergraph,
             inputs: tuple[str, ...] | list[str],
             csig: CircuitSignature,
             max_unfoldings: int = 64,
             max_steps: int = 10000):
    """Run a circuit on concrete input values by graph reduction.

    Feedback is handled by unfolding: the graph is cut open at its global
    trace, and the loop values are iterated from bottom until they stop
    changing.  Returns the output value word, or UNPRODUCTIVE when any
    budget is exhausted or reduction gets stuck (delays holding non-bottom
    values do that).
    """
    sig = csig.signature()
    H = interpret(circuit, sig) if isinstance(circuit, Term) else circuit
    m, n = H.arity()
    inputs = tuple(inputs)
    if len(inputs) != m:
        raise ValueError(f"circuit takes {m} inputs, got {len(inputs)}")
    bad = [v for v in inputs if v not in csig.lattice.values]
    if bad:
        raise ValueError(f"unknown values {bad}")
    closed = compose_graphs(interpret(value_row(inputs), sig), H)
    traced = extract_term(closed)
    assert isinstance(traced, Trace)
    loop, body = traced.loop, traced.body
    x = len(loop)
    rules = eval_rules(csig)

    w = (csig.lattice.bottom,) * x
    for _ in range(max_unfoldings):
        probe = Seq(value_row(w), body) if x else body
        result = normalize(interpret(probe, sig), rules, max_steps=max_steps)
        if result.exhausted:
            return UNPRODUCTIVE
        vals = read_value_word(result.graph, csig)
        if vals is None or len(vals) != x + n:
            return UNPRODUCTIVE
        w_next, outs = vals[:x], vals[x:]
        if w_next == w:
            return outs
        w = w_next
    return UNPRODUCTIVE


# ---------------------------------------------------------------------------
# Lattice description files
# ---------------------------------------------------------------------------

def parse_circuit_signature(text: str) -> CircuitSignature:
    """Parse a lattice/gate description.

    Lines: ``values: v ...``, ``bottom: v``, ``join: a b -> c`` rows, and
    ``gate NAME arity N: v ... -> v`` truth-table rows.
    """
    values: list[str] = []
    bottom: str | None = None
    join_rows: dict[tuple[str, str], str] = {}
    gate_rows: dict[str, tuple[int, dict[tuple[str, ...], str]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("values:"):
            values = line.split(":", 1)[1].split()
        elif line.startswith("bottom:"):
            bottom = line.split(":", 1)[1].strip()
        elif line.startswith("join:"):
            body = line.split(":", 1)[1]
            try:
                args, res = body.split("->")
                a, b = args.split()
                join_rows[(a, b)] = res.strip()
            except ValueError:
                raise LatticeError(f"line {lineno}: bad join row")
        elif line.startswith("gate "):
            head, body = line.split(":", 1)
            parts = head.split()
            if len(parts) != 4 or parts[2] != "arity":
                raise LatticeError(
                    f"line {lineno}: expected 'gate NAME arity N: row'")
            name, arity = parts[1], int(parts[3])
            try:
                args, res = body.split("->")
                row = tuple(args.split())
            except ValueError:
                raise LatticeError(f"line {lineno}: bad gate row")
            if len(row) != arity:
                raise LatticeError(f"line {lineno}: row arity mismatch")
            gate_rows.setdefault(name, (arity, {}))
            if gate_rows[name][0] != arity:
                raise LatticeError(f"line {lineno}: gate {name} arity changed")
            gate_rows[name][1][row] = res.strip()
        else:
            raise LatticeError(f"line {lineno}: unrecognised line {line!r}")
    if not values or bottom is None:
        raise LatticeError("missing values: or bottom: declaration")
    lattice = ValueLattice(tuple(values), bottom, join_rows)
    gates = {name: Gate(name, arity, table)
             for name, (arity, table) in gate_rows.items()}
    return CircuitSignature(lattice, gates)
