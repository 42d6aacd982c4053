"""Double-pushout rewriting on linear hypergraphs.

A rule is a span ``L <- K -> R`` with an edge-free interface ``K``.  A
step finds an embedding of ``L`` in a host graph, removes ``L`` up to the
interface (pushout complement), and glues ``R`` back in (pushout).
Rules whose interface legs would collapse a straight-through wire are
saturated with identity edges first; matching such rules transparently
expands the host on the wires the identity edges need.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import (IDENTITY_LABEL, INTERFACE, Homomorphism,
                     LinearHypergraph, SimpleHypergraph, expand, freshen,
                     find_isomorphism, smooth, to_simple)
from .interp import interpret
from .ops import identity as identity_graph
from .terms import Signature, Term, TypeMismatch, parse_term, type_of


class RewriteError(Exception):
    pass


@dataclass(frozen=True)
class RewriteRule:
    name: str
    L: LinearHypergraph
    K: LinearHypergraph
    R: LinearHypergraph
    left_leg: Homomorphism
    right_leg: Homomorphism


@dataclass(frozen=True)
class Matching:
    """An embedding of a rule's left side into a host graph.

    ``host`` is the graph the embedding lands in: the original graph, or
    a homeomorphic expansion of it when the left side carries identity
    edges.
    """

    embedding: Homomorphism
    host: LinearHypergraph


# ---------------------------------------------------------------------------
# Rules
# ---------------------------------------------------------------------------

def _interface_leg(K: LinearHypergraph, X: LinearHypergraph) -> Homomorphism:
    """Map the i-th input wire of K to X's i-th input wire, and the j-th
    output wire to X's j-th output wire."""
    m = len(X.dom())
    conn_inv = X.conn_inv()
    ins, outs = X.inputs(), X.outputs()
    vmap_t: dict[int, int] = {}
    vmap_s: dict[int, int] = {}
    for i, kt in enumerate(K.targets):
        if i < m:
            vmap_t[kt] = ins[i]
            vmap_s[K.conn[kt]] = X.conn[ins[i]]
        else:
            j = i - m
            vmap_s[K.conn[kt]] = outs[j]
            vmap_t[kt] = conn_inv[outs[j]]
    return Homomorphism(K, X, vmap_t, vmap_s, {})


def rule_from_terms(lhs: Term, rhs: Term, sig: Signature,
                    name: str = "rule") -> RewriteRule:
    """Compile a pair of terms into a saturated rule span."""
    if type_of(lhs, sig) != type_of(rhs, sig):
        raise TypeMismatch("rule sides must share a type")
    L = interpret(lhs, sig)
    R = interpret(rhs, sig)
    return saturate_rule(_make_rule(name, L, R))


def _make_rule(name: str, L: LinearHypergraph,
               R: LinearHypergraph) -> RewriteRule:
    K = identity_graph(L.dom() + L.cod())
    return RewriteRule(name, L, K, R,
                       _interface_leg(K, L), _interface_leg(K, R))


def _straight_wires(X: LinearHypergraph) -> list[int]:
    outs = set(X.outputs())
    return [t for t in X.inputs() if X.conn[t] in outs]


def saturate_rule(rule: RewriteRule) -> RewriteRule:
    """Expand straight-through wires on either side with identity edges
    so that both interface legs become embeddings.  Idempotent."""
    L, R = rule.L, rule.R
    changed = False
    for t in _straight_wires(L):
        L = expand(L, t)
        changed = True
    for t in _straight_wires(R):
        R = expand(R, t)
        changed = True
    if not changed and rule.left_leg.is_embedding() and rule.right_leg.is_embedding():
        return rule
    return _make_rule(rule.name, L, R)


def parse_rules(text: str, sig: Signature) -> list[RewriteRule]:
    """Rule file: one ``name : lhs => rhs`` line per rule."""
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            name_part, rest = line.split(":", 1)
            lhs_part, rhs_part = rest.split("=>", 1)
        except ValueError:
            raise RewriteError(f"line {lineno}: expected 'name : lhs => rhs'")
        rules.append(rule_from_terms(
            parse_term(lhs_part.strip(), sig),
            parse_term(rhs_part.strip(), sig),
            sig, name_part.strip()))
    return rules


# ---------------------------------------------------------------------------
# Matching
# ---------------------------------------------------------------------------

class _Conflict(Exception):
    pass


def _embeddings(L: LinearHypergraph, G: LinearHypergraph,
                up_to_homeo: bool = False) -> list[Homomorphism]:
    """Every embedding of L into G, in a deterministic order.

    Edge-anchored: each edge component of L is pinned by its first edge
    and the rest follows the wires; bare wires of L range over the
    remaining wires of G.  Interfaces of L may land anywhere.

    With ``up_to_homeo`` the loose ends of L's boundary wires are bound
    last, and when the wire leaving the matched part re-enters it
    immediately (a loop through the pattern's boundary), the host wire is
    expanded with an identity edge so both boundary wires fit.  The
    returned homomorphisms then land in that expanded host.
    """
    ltgts, lsrcs = L.port_tables()
    gtgts, gsrcs = G.port_tables()
    lconn_inv = L.conn_inv()
    gconn_inv = G.conn_inv()
    l_port_t = {v: (e, i) for e in L.edges for i, v in enumerate(ltgts[e])}
    l_port_s = {v: (e, i) for e in L.edges for i, v in enumerate(lsrcs[e])}

    # group L's edges into wire-connected components, each led by its
    # first edge in stored order
    neighbours: dict[int, set[int]] = {e: set() for e in L.edges}
    for t in L.targets:
        e1 = L.left[t]
        e2 = L.right[L.conn[t]]
        if e1 is not INTERFACE and e2 is not INTERFACE:
            neighbours[e1].add(e2)
            neighbours[e2].add(e1)
    components: list[list[int]] = []
    placed: set[int] = set()
    for e in L.edges:
        if e in placed:
            continue
        comp, queue = [], [e]
        while queue:
            x = queue.pop(0)
            if x in placed:
                continue
            placed.add(x)
            comp.append(x)
            queue.extend(sorted(neighbours[x], key=L.edges.index))
        components.append(comp)

    bare_wires = [t for t in L.targets
                  if L.left[t] is INTERFACE
                  and L.right[L.conn[t]] is INTERFACE]
    # boundary wires whose loose end is bound late in homeo mode
    out_wires = [t for t in L.targets
                 if L.left[t] is not INTERFACE
                 and L.right[L.conn[t]] is INTERFACE]
    in_wires = [t for t in L.targets
                if L.left[t] is INTERFACE
                and L.right[L.conn[t]] is not INTERFACE]

    solutions: list[Homomorphism] = []

    def put(state, kind: str, a: int, b: int) -> None:
        table, used = state[kind]
        if a in table:
            if table[a] != b:
                raise _Conflict
            return
        if b in used:
            raise _Conflict
        table[a] = b
        used.add(b)
        state["agenda"].append((kind, a))

    def propagate(state) -> None:
        agenda = state["agenda"]
        tmap, smap, emap = state["t"][0], state["s"][0], state["e"][0]
        while agenda:
            kind, a = agenda.pop()
            if kind == "t":
                b = tmap[a]
                if L.vtlabels[a] != G.vtlabels[b]:
                    raise _Conflict
                partner = L.conn[a]
                defer = (up_to_homeo
                         and L.left[a] is not INTERFACE
                         and L.right[partner] is INTERFACE)
                if not defer:
                    put(state, "s", partner, G.conn[b])
                if a in l_port_t:
                    e, i = l_port_t[a]
                    d = G.left[b]
                    if d is INTERFACE or G.labels[d] != L.labels[e]:
                        raise _Conflict
                    if len(gtgts[d]) <= i or gtgts[d][i] != b:
                        raise _Conflict
                    put(state, "e", e, d)
            elif kind == "s":
                b = smap[a]
                if L.vslabels[a] != G.vslabels[b]:
                    raise _Conflict
                partner = lconn_inv[a]
                defer = (up_to_homeo
                         and L.right[a] is not INTERFACE
                         and L.left[partner] is INTERFACE)
                if not defer:
                    put(state, "t", partner, gconn_inv[b])
                if a in l_port_s:
                    e, i = l_port_s[a]
                    d = G.right[b]
                    if d is INTERFACE or G.labels[d] != L.labels[e]:
                        raise _Conflict
                    if len(gsrcs[d]) <= i or gsrcs[d][i] != b:
                        raise _Conflict
                    put(state, "e", e, d)
            else:
                d = emap[a]
                if G.labels[d] != L.labels[a]:
                    raise _Conflict
                if (len(gtgts[d]) != len(ltgts[a])
                        or len(gsrcs[d]) != len(lsrcs[a])):
                    raise _Conflict
                for u, w in zip(ltgts[a], gtgts[d]):
                    put(state, "t", u, w)
                for u, w in zip(lsrcs[a], gsrcs[d]):
                    put(state, "s", u, w)

    def clone(state):
        return {
            "t": (dict(state["t"][0]), set(state["t"][1])),
            "s": (dict(state["s"][0]), set(state["s"][1])),
            "e": (dict(state["e"][0]), set(state["e"][1])),
            "agenda": [],
        }

    def assign_components(idx: int, state) -> None:
        if idx == len(components):
            assign_bare(0, state)
            return
        anchor = components[idx][0]
        for d in G.edges:
            if d in state["e"][1] or G.labels[d] != L.labels[anchor]:
                continue
            trial = clone(state)
            try:
                put(trial, "e", anchor, d)
                propagate(trial)
            except _Conflict:
                continue
            assign_components(idx + 1, trial)

    def assign_bare(idx: int, state) -> None:
        if idx == len(bare_wires):
            finalize(state)
            return
        t = bare_wires[idx]
        for tg in G.targets:
            if tg in state["t"][1] or G.conn[tg] in state["s"][1]:
                continue
            if G.vtlabels[tg] != L.vtlabels[t]:
                continue
            trial = clone(state)
            try:
                put(trial, "t", t, tg)
                propagate(trial)
            except _Conflict:
                continue
            assign_bare(idx + 1, trial)

    def finalize(state) -> None:
        tmap, smap, emap = (dict(state["t"][0]), dict(state["s"][0]),
                            dict(state["e"][0]))
        host = G
        if up_to_homeo:
            host = _resolve_boundary(tmap, smap, set(state["t"][1]),
                                     set(state["s"][1]))
            if host is None:
                return
        if len(tmap) != len(L.targets) or len(smap) != len(L.sources):
            return
        h = Homomorphism(L, host, tmap, smap, emap)
        if h.is_embedding():
            solutions.append(h)

    def _resolve_boundary(tmap, smap, used_t, used_s):
        """Bind the loose ends of boundary wires, expanding the host
        where an out-wire's host wire immediately re-enters an in-wire."""
        host = G
        pending_in = {}
        for a in in_wires:
            b = L.conn[a]
            if b not in smap:
                return None
            pending_in[gconn_inv[smap[b]]] = a
        for c in out_wires:
            if c not in tmap:
                return None
            d = L.conn[c]
            t_w = tmap[c]
            s_w = host.conn[t_w]
            hit = pending_in.get(t_w)
            if hit is not None:
                # the wire leaving the match feeds straight back in: split it
                host = expand(host, t_w)
                t_new, s_new = host.targets[-1], host.sources[-1]
                if (L.vslabels[d] != host.vslabels[s_new]
                        or L.vtlabels[hit] != host.vtlabels[t_new]):
                    return None
                smap[d] = s_new
                used_s.add(s_new)
                tmap[hit] = t_new
                used_t.add(t_new)
                del pending_in[t_w]
            else:
                if s_w in used_s or L.vslabels[d] != host.vslabels[s_w]:
                    return None
                smap[d] = s_w
                used_s.add(s_w)
        for anchor_t, a in pending_in.items():
            if anchor_t in used_t or L.vtlabels[a] != host.vtlabels[anchor_t]:
                return None
            tmap[a] = anchor_t
            used_t.add(anchor_t)
        return host

    initial = {"t": ({}, set()), "s": ({}, set()), "e": ({}, set()),
               "agenda": []}
    assign_components(0, initial)
    return solutions


def _identity_chains(L: LinearHypergraph) -> list[tuple[int, list[int]]]:
    """Maximal runs of identity edges, each anchored at the surviving
    target vertex that feeds the run."""
    tgts, srcs = L.port_tables()
    conn_inv = L.conn_inv()
    id_edges = [e for e in L.edges if L.labels[e] == IDENTITY_LABEL]

    def is_ident(e: int | None) -> bool:
        return e is not INTERFACE and L.labels[e] == IDENTITY_LABEL

    heads = [e for e in id_edges
             if not is_ident(L.left[conn_inv[srcs[e][0]]])]
    chains: list[tuple[int, list[int]]] = []
    used: set[int] = set()
    for h in heads:
        chain = [h]
        used.add(h)
        cur = h
        while True:
            nxt = L.right[L.conn[tgts[cur][0]]]
            if is_ident(nxt):
                chain.append(nxt)
                used.add(nxt)
                cur = nxt
            else:
                break
        chains.append((conn_inv[srcs[h][0]], chain))
    if len(used) != len(id_edges):
        raise RewriteError(
            "left side contains a closed loop of identity edges; it cannot"
            " anchor a match")
    return chains


def find_matchings(L: LinearHypergraph, G: LinearHypergraph,
                   up_to_homeo: bool = False) -> list[Matching]:
    """All ways the pattern L embeds into G.

    Identity edges in L match by expanding the corresponding wire of G,
    so the returned host may be a homeomorphic expansion of G.  With
    ``up_to_homeo``, boundary wires of L may also share one host wire
    (the rewrite theory works up to wire homeomorphism; loops through a
    redex need this).
    """
    if not any(L.labels[e] == IDENTITY_LABEL for e in L.edges):
        return [Matching(h, h.dst)
                for h in _embeddings(L, G, up_to_homeo)]
    chains = _identity_chains(L)
    Ls = smooth(L)
    ltgts, lsrcs = L.port_tables()
    matchings = []
    for base in _embeddings(Ls, G, up_to_homeo):
        host = base.dst
        vmap_t = dict(base.vmap_t)
        vmap_s = dict(base.vmap_s)
        emap = dict(base.emap)
        for t0, chain in chains:
            cur = vmap_t[t0]
            for e in chain:
                host = expand(host, cur)
                t_new, s_new, e_new = (host.targets[-1], host.sources[-1],
                                       host.edges[-1])
                vmap_t[ltgts[e][0]] = t_new
                vmap_s[lsrcs[e][0]] = s_new
                emap[e] = e_new
                cur = t_new
        matchings.append(Matching(Homomorphism(L, host, vmap_t, vmap_s, emap),
                                  host))
    return matchings


# ---------------------------------------------------------------------------
# Pushouts
# ---------------------------------------------------------------------------

def boundary_coherent(m: Homomorphism, n: Homomorphism) -> bool:
    """Every input of the shared domain is an input under at least one
    leg, and dually for outputs."""
    F = m.src
    for v in F.inputs():
        if (m.dst.left[m.vmap_t[v]] is not INTERFACE
                and n.dst.left[n.vmap_t[v]] is not INTERFACE):
            return False
    for v in F.outputs():
        if (m.dst.right[m.vmap_s[v]] is not INTERFACE
                and n.dst.right[n.vmap_s[v]] is not INTERFACE):
            return False
    return True


def pushout_complement(left_leg: Homomorphism, match: Homomorphism
                       ) -> tuple[Homomorphism, Homomorphism]:
    """Remove the matched copy of L from G, keeping the interface image.

    Vertices of L outside K's image and all matched L-edges are deleted;
    wires severed by the deletion are rerouted to the interface.
    Returns the legs ``K -> C`` and ``C -> G``.
    """
    K, L, G = left_leg.src, left_leg.dst, match.dst
    if not left_leg.is_embedding() or not match.is_embedding():
        raise RewriteError("pushout complement needs embeddings")
    keep_t = {match.vmap_t[left_leg.vmap_t[k]] for k in K.targets}
    keep_s = {match.vmap_s[left_leg.vmap_s[k]] for k in K.sources}
    kill_t = {match.vmap_t[v] for v in L.targets} - keep_t
    kill_s = {match.vmap_s[v] for v in L.sources} - keep_s
    kill_e = ({match.emap[e] for e in L.edges}
              - {match.emap[left_leg.emap[k]] for k in K.edges})

    def cut_left(v: int) -> int | None:
        e = G.left[v]
        return INTERFACE if e in kill_e else e

    def cut_right(v: int) -> int | None:
        e = G.right[v]
        return INTERFACE if e in kill_e else e

    targets = tuple(v for v in G.targets if v not in kill_t)
    sources = tuple(v for v in G.sources if v not in kill_s)
    for t in targets:
        if G.conn[t] in kill_s:
            raise RewriteError(
                f"deleting the match severs wire {t}->{G.conn[t]} badly")
    C = LinearHypergraph(
        targets=targets,
        sources=sources,
        edges=tuple(e for e in G.edges if e not in kill_e),
        left={v: cut_left(v) for v in targets},
        right={v: cut_right(v) for v in sources},
        conn={t: G.conn[t] for t in targets},
        labels={e: lab for e, lab in G.labels.items() if e not in kill_e},
        vtlabels={v: l for v, l in G.vtlabels.items() if v not in kill_t},
        vslabels={v: l for v, l in G.vslabels.items() if v not in kill_s},
    )
    k_to_c = Homomorphism(
        K, C,
        {k: match.vmap_t[left_leg.vmap_t[k]] for k in K.targets},
        {k: match.vmap_s[left_leg.vmap_s[k]] for k in K.sources},
        {k: match.emap[left_leg.emap[k]] for k in K.edges},
    )
    c_to_g = Homomorphism(
        C, G,
        {v: v for v in C.targets},
        {v: v for v in C.sources},
        {e: e for e in C.edges},
    )
    return k_to_c, c_to_g


def pushout(m: Homomorphism, n: Homomorphism
            ) -> tuple[LinearHypergraph, Homomorphism, Homomorphism]:
    """Glue the codomains of ``m : K -> C`` and ``n : K -> R`` along K.

    Requires an edge-free K, embeddings, and boundary coherence; the
    violating vertex is reported otherwise.
    """
    K, C = m.src, m.dst
    if K.edges:
        raise RewriteError("pushout interface must be edge-free")
    if not m.is_embedding() or not n.is_embedding():
        raise RewriteError("pushout needs a span of embeddings")
    R_orig = n.dst
    R = freshen(R_orig)
    ids_old = list(R_orig.targets) + list(R_orig.sources) + list(R_orig.edges)
    ids_new = list(R.targets) + list(R.sources) + list(R.edges)
    lift = dict(zip(ids_old, ids_new))
    n = Homomorphism(K, R,
                     {k: lift[v] for k, v in n.vmap_t.items()},
                     {k: lift[v] for k, v in n.vmap_s.items()},
                     {})

    rep_t = {n.vmap_t[k]: m.vmap_t[k] for k in K.targets}
    rep_s = {n.vmap_s[k]: m.vmap_s[k] for k in K.sources}
    for k in K.targets:
        cl = C.left[m.vmap_t[k]]
        rl = R.left[n.vmap_t[k]]
        if cl is not INTERFACE and rl is not INTERFACE:
            raise RewriteError(
                f"not boundary coherent: interface vertex {k} is"
                " edge-attached on both sides")
    for k in K.sources:
        cr = C.right[m.vmap_s[k]]
        rr = R.right[n.vmap_s[k]]
        if cr is not INTERFACE and rr is not INTERFACE:
            raise RewriteError(
                f"not boundary coherent: interface vertex {k} is"
                " edge-attached on both sides")

    r_only_t = tuple(v for v in R.targets if v not in rep_t)
    r_only_s = tuple(v for v in R.sources if v not in rep_s)

    left = {}
    for v in C.targets:
        left[v] = C.left[v]
    for k in K.targets:
        if C.left[m.vmap_t[k]] is INTERFACE:
            left[m.vmap_t[k]] = R.left[n.vmap_t[k]]
    for v in r_only_t:
        left[v] = R.left[v]

    right = {}
    for v in C.sources:
        right[v] = C.right[v]
    for k in K.sources:
        if C.right[m.vmap_s[k]] is INTERFACE:
            right[m.vmap_s[k]] = R.right[n.vmap_s[k]]
    for v in r_only_s:
        right[v] = R.right[v]

    conn = dict(C.conn)
    for v in r_only_t:
        s = R.conn[v]
        conn[v] = rep_s.get(s, s)

    H = LinearHypergraph(
        targets=C.targets + r_only_t,
        sources=C.sources + r_only_s,
        edges=C.edges + R.edges,
        left=left,
        right=right,
        conn=conn,
        labels={**C.labels, **R.labels},
        vtlabels={**C.vtlabels, **{v: R.vtlabels[v] for v in r_only_t}},
        vslabels={**C.vslabels, **{v: R.vslabels[v] for v in r_only_s}},
    )
    c_to_h = Homomorphism(C, H, {v: v for v in C.targets},
                          {v: v for v in C.sources},
                          {e: e for e in C.edges})
    r_to_h = Homomorphism(
        R_orig, H,
        {v: rep_t.get(lift[v], lift[v]) for v in R_orig.targets},
        {v: rep_s.get(lift[v], lift[v]) for v in R_orig.sources},
        {e: lift[e] for e in R_orig.edges},
    )
    return H, c_to_h, r_to_h


def glue_simple(m: Homomorphism, n: Homomorphism) -> SimpleHypergraph:
    """The pushout computed in plain simple hypergraphs.

    Always exists; used to witness that non-boundary-coherent spans glue
    to something that is no longer linear."""
    K = m.src
    IC, IR = to_simple(m.dst), to_simple(n.dst)
    rep = {n.vmap_s[k]: m.vmap_s[k] for k in K.sources}
    vertices = IC.vertices + tuple(v for v in IR.vertices if v not in rep)

    def r_img(v: int) -> int:
        return rep.get(v, v)

    src = {**{e: IC.src[e] for e in IC.edges},
           **{e: tuple(r_img(v) for v in IR.src[e]) for e in IR.edges}}
    tgt = {**{e: IC.tgt[e] for e in IC.edges},
           **{e: tuple(r_img(v) for v in IR.tgt[e]) for e in IR.edges}}
    return SimpleHypergraph(
        vertices=vertices,
        edges=IC.edges + IR.edges,
        src=src, tgt=tgt,
        labels={**IC.labels, **IR.labels},
    )


# ---------------------------------------------------------------------------
# Steps and the driver
# ---------------------------------------------------------------------------

def apply_rewrite(G: LinearHypergraph, rule: RewriteRule, match: Matching,
                  keep_identities: bool = False) -> LinearHypergraph:
    """One DPO step at the given match: complement, glue, smooth."""
    k_to_c, _ = pushout_complement(rule.left_leg, match.embedding)
    H, _, _ = pushout(k_to_c, rule.right_leg)
    return H if keep_identities else smooth(H)


@dataclass(frozen=True)
class Step:
    index: int
    rule: str
    edges: tuple[int, ...]

    def __str__(self) -> str:
        return f"step {self.index}: rule {self.rule} at edges {list(self.edges)}"


@dataclass
class NormalizeResult:
    graph: LinearHypergraph
    steps: list[Step] = field(default_factory=list)
    exhausted: bool = False


def normalize(G: LinearHypergraph, rules: list[RewriteRule],
              max_steps: int = 10000,
              strategy: str = "deterministic") -> NormalizeResult:
    """Apply rules until no rule matches or the step budget runs out.

    The deterministic strategy always takes the first rule's first match
    under the canonical order, so runs are reproducible.  The exhaustive
    strategy explores every match order and returns the first normal
    form found (see :func:`normal_forms`).
    """
    if strategy == "exhaustive":
        nfs, exhausted = normal_forms(G, rules, max_steps=max_steps)
        return NormalizeResult(nfs[0] if nfs else G, [], exhausted)
    if strategy != "deterministic":
        raise ValueError(f"unknown strategy {strategy!r}")
    # a rule whose left side is the empty graph matches everywhere and
    # rewrites nothing; the driver would never terminate on it
    rules = [r for r in rules if r.L.targets or r.L.edges]
    current = G
    steps: list[Step] = []
    while True:
        if len(steps) >= max_steps:
            return NormalizeResult(current, steps, exhausted=True)
        hit = None
        for rule in rules:
            ms = find_matchings(rule.L, current, up_to_homeo=True)
            if ms:
                hit = (rule, ms[0])
                break
        if hit is None:
            return NormalizeResult(current, steps, exhausted=False)
        rule, match = hit
        matched_edges = tuple(sorted(match.embedding.emap.values()))
        current = apply_rewrite(current, rule, match)
        steps.append(Step(len(steps) + 1, rule.name, matched_edges))


def normal_forms(G: LinearHypergraph, rules: list[RewriteRule],
                 max_steps: int = 10000,
                 max_states: int = 2000) -> tuple[list[LinearHypergraph], bool]:
    """Breadth-first exploration of every rewrite order.

    Returns the normal forms reached (deduplicated up to isomorphism)
    and whether the state bound cut the search short.
    """
    rules = [r for r in rules if r.L.targets or r.L.edges]
    seen: list[LinearHypergraph] = [G]
    frontier = [G]
    nfs: list[LinearHypergraph] = []
    expansions = 0
    exhausted = False
    while frontier:
        cur = frontier.pop(0)
        succs = []
        for rule in rules:
            for match in find_matchings(rule.L, cur, up_to_homeo=True):
                succs.append(apply_rewrite(cur, rule, match))
        if not succs:
            if not any(find_isomorphism(cur, x) for x in nfs):
                nfs.append(cur)
            continue
        expansions += 1
        if expansions > max_steps or len(seen) > max_states:
            exhausted = True
            break
        for s in succs:
            if not any(find_isomorphism(s, x) for x in seen):
                seen.append(s)
                frontier.append(s)
    return nfs, exhausted
