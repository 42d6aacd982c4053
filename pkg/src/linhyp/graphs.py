"""Linear hypergraphs and their structure-preserving maps.

A linear hypergraph keeps two ordered vertex sequences of equal length:
*targets* sit on the left of edges (or on the input interface), *sources*
sit on the right of edges (or on the output interface).  A bijection
``conn`` pairs every target with a source; each vertex touches exactly
one edge side or the interface, so wires never split or merge.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field

from .terms import ANON, Word

#: Left/right value marking a vertex as lying on the interface.
INTERFACE = None

#: Reserved edge label for invisible identity edges (wire homeomorphisms).
IDENTITY_LABEL = "@id"


class _IdSupply:
    """Process-global fresh-id counter; thread-safe."""

    def __init__(self) -> None:
        self._counter = itertools.count()
        self._lock = threading.Lock()

    def fresh(self, n: int = 1) -> list[int]:
        with self._lock:
            return [next(self._counter) for _ in range(n)]


_SUPPLY = _IdSupply()


def fresh_ids(n: int) -> list[int]:
    return _SUPPLY.fresh(n)


@dataclass(frozen=True)
class LinearHypergraph:
    targets: tuple[int, ...]
    sources: tuple[int, ...]
    edges: tuple[int, ...]
    left: dict[int, int | None]
    right: dict[int, int | None]
    conn: dict[int, int]
    labels: dict[int, str]
    vtlabels: dict[int, str] = field(default_factory=dict)
    vslabels: dict[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.vtlabels:
            object.__setattr__(self, "vtlabels", {v: ANON for v in self.targets})
        if not self.vslabels:
            object.__setattr__(self, "vslabels", {v: ANON for v in self.sources})

    # -- derived structure ------------------------------------------------

    def inputs(self) -> tuple[int, ...]:
        return tuple(v for v in self.targets if self.left[v] is INTERFACE)

    def outputs(self) -> tuple[int, ...]:
        return tuple(v for v in self.sources if self.right[v] is INTERFACE)

    def edge_targets(self, e: int) -> tuple[int, ...]:
        return tuple(v for v in self.targets if self.left[v] == e)

    def edge_sources(self, e: int) -> tuple[int, ...]:
        return tuple(v for v in self.sources if self.right[v] == e)

    def conn_inv(self) -> dict[int, int]:
        return {s: t for t, s in self.conn.items()}

    def dom(self) -> Word:
        return tuple(self.vtlabels[v] for v in self.inputs())

    def cod(self) -> Word:
        return tuple(self.vslabels[v] for v in self.outputs())

    def arity(self) -> tuple[int, int]:
        return len(self.inputs()), len(self.outputs())

    def port_tables(self) -> tuple[dict[int, tuple[int, ...]], dict[int, tuple[int, ...]]]:
        """Per-edge ordered target and source sequences, in one pass."""
        tgts: dict[int, list[int]] = {e: [] for e in self.edges}
        srcs: dict[int, list[int]] = {e: [] for e in self.edges}
        for v in self.targets:
            e = self.left[v]
            if e is not INTERFACE:
                tgts[e].append(v)
        for v in self.sources:
            e = self.right[v]
            if e is not INTERFACE:
                srcs[e].append(v)
        return ({e: tuple(vs) for e, vs in tgts.items()},
                {e: tuple(vs) for e, vs in srcs.items()})

    def real_edges(self) -> tuple[int, ...]:
        """Edges excluding identity edges."""
        return tuple(e for e in self.edges if self.labels[e] != IDENTITY_LABEL)

    def __repr__(self) -> str:
        m, n = self.arity()
        return (f"LinearHypergraph({m}->{n}, |T|={len(self.targets)},"
                f" edges={[self.labels[e] for e in self.edges]})")


def empty_graph() -> LinearHypergraph:
    return LinearHypergraph((), (), (), {}, {}, {}, {})


# ---------------------------------------------------------------------------
# Well-formedness
# ---------------------------------------------------------------------------

def validate(H: LinearHypergraph, sig=None) -> list[str]:
    """Check every well-formedness clause; return one message per violation.

    With a signature, edge labels are also checked against their declared
    arity words; without one, same-labelled edges only need to agree with
    each other.
    """
    report: list[str] = []
    tset, sset = set(H.targets), set(H.sources)
    if len(tset) != len(H.targets):
        report.append("duplicate target vertex ids")
    if len(sset) != len(H.sources):
        report.append("duplicate source vertex ids")
    if tset & sset:
        report.append(f"targets and sources overlap: {sorted(tset & sset)}")
    if len(H.targets) != len(H.sources):
        report.append(
            f"unequal vertex counts: {len(H.targets)} targets,"
            f" {len(H.sources)} sources")
    eset = set(H.edges)
    if len(eset) != len(H.edges):
        report.append("duplicate edge ids")

    for v in H.targets:
        if v not in H.left:
            report.append(f"left undefined on target {v}")
        elif H.left[v] is not INTERFACE and H.left[v] not in eset:
            report.append(f"left({v}) is not an edge of the graph")
        if v not in H.vtlabels:
            report.append(f"target {v} has no object label")
    for v in H.sources:
        if v not in H.right:
            report.append(f"right undefined on source {v}")
        elif H.right[v] is not INTERFACE and H.right[v] not in eset:
            report.append(f"right({v}) is not an edge of the graph")
        if v not in H.vslabels:
            report.append(f"source {v} has no object label")

    missing_conn = [v for v in H.targets if v not in H.conn]
    for v in missing_conn:
        report.append(f"conn undefined on target {v}")
    image = [H.conn[v] for v in H.targets if v in H.conn]
    bad = [s for s in image if s not in sset]
    for s in bad:
        report.append(f"conn hits {s}, which is not a source vertex")
    if len(set(image)) != len(image):
        seen: set[int] = set()
        for s in image:
            if s in seen:
                report.append(f"conn not injective: source {s} hit twice")
            seen.add(s)
    missed = sset - set(image)
    for s in sorted(missed):
        report.append(f"conn not surjective: source {s} never hit")

    for e in H.edges:
        if e not in H.labels:
            report.append(f"edge {e} has no label")
    if report:
        return report

    # label-arity agreement
    tgts, srcs = H.port_tables()
    arities: dict[str, tuple[Word, Word]] = {}
    for e in H.edges:
        lab = H.labels[e]
        dom_w = tuple(H.vslabels[v] for v in srcs[e])
        cod_w = tuple(H.vtlabels[v] for v in tgts[e])
        if lab == IDENTITY_LABEL:
            if len(dom_w) != 1 or len(cod_w) != 1 or dom_w != cod_w:
                report.append(f"identity edge {e} is not a single-wire pass-through")
            continue
        if sig is not None:
            if lab not in sig:
                report.append(f"edge {e} labelled with unknown generator {lab!r}")
            else:
                if dom_w != sig.dom(lab):
                    report.append(
                        f"edge {e} ({lab}): source word {dom_w} != declared {sig.dom(lab)}")
                if cod_w != sig.cod(lab):
                    report.append(
                        f"edge {e} ({lab}): target word {cod_w} != declared {sig.cod(lab)}")
        if lab in arities and arities[lab] != (dom_w, cod_w):
            report.append(f"edges labelled {lab!r} disagree on arity")
        arities.setdefault(lab, (dom_w, cod_w))

    # connected vertices carry the same object label
    for t, s in H.conn.items():
        if H.vtlabels.get(t) != H.vslabels.get(s):
            report.append(
                f"wire {t}->{s} changes object label"
                f" {H.vtlabels.get(t)!r} -> {H.vslabels.get(s)!r}")
    return report


def assert_valid(H: LinearHypergraph, sig=None) -> LinearHypergraph:
    report = validate(H, sig)
    if report:
        raise ValueError("malformed hypergraph: " + "; ".join(report))
    return H


# ---------------------------------------------------------------------------
# Renaming
# ---------------------------------------------------------------------------

def rename(H: LinearHypergraph, perm: dict[int, int]) -> LinearHypergraph:
    """Apply a finite id permutation to every carrier of ``H``."""
    ids = list(H.targets) + list(H.sources) + list(H.edges)
    img = [perm.get(x, x) for x in ids]
    if len(set(img)) != len(img):
        raise ValueError("renaming is not injective on the graph's ids")

    def p(x: int | None) -> int | None:
        return x if x is INTERFACE else perm.get(x, x)

    return LinearHypergraph(
        targets=tuple(perm.get(v, v) for v in H.targets),
        sources=tuple(perm.get(v, v) for v in H.sources),
        edges=tuple(perm.get(e, e) for e in H.edges),
        left={perm.get(v, v): p(e) for v, e in H.left.items()},
        right={perm.get(v, v): p(e) for v, e in H.right.items()},
        conn={perm.get(t, t): perm.get(s, s) for t, s in H.conn.items()},
        labels={perm.get(e, e): lab for e, lab in H.labels.items()},
        vtlabels={perm.get(v, v): lab for v, lab in H.vtlabels.items()},
        vslabels={perm.get(v, v): lab for v, lab in H.vslabels.items()},
    )


def freshen(H: LinearHypergraph) -> LinearHypergraph:
    """Copy ``H`` onto entirely fresh ids."""
    ids = list(H.targets) + list(H.sources) + list(H.edges)
    return rename(H, dict(zip(ids, fresh_ids(len(ids)))))


def traversal_order(H: LinearHypergraph) -> tuple[list[int], list[int], list[int]]:
    """Deterministic interface-first traversal of vertices and edges.

    Walks wires from the inputs, entering edges through their source
    ports and leaving through their target ports; remaining pieces
    (closed loops) are seeded in stored target order.  Depends only on
    the stored orders, never on id values.
    """
    tgts, srcs = H.port_tables()
    seen_t: list[int] = []
    seen_s: list[int] = []
    seen_e: list[int] = []
    seen = set()

    def visit_target(t: int) -> None:
        queue = [t]
        while queue:
            v = queue.pop(0)
            if v in seen:
                continue
            seen.add(v)
            seen_t.append(v)
            s = H.conn[v]
            if s not in seen:
                seen.add(s)
                seen_s.append(s)
                e = H.right[s]
                if e is not INTERFACE and e not in seen:
                    seen.add(e)
                    seen_e.append(e)
                    queue.extend(w for w in tgts[e] if w not in seen)

    for t in H.inputs():
        visit_target(t)
    for t in H.targets:
        visit_target(t)
    return seen_t, seen_s, seen_e


def canonical(H: LinearHypergraph) -> LinearHypergraph:
    """Renumber ids along the interface-first traversal.

    Isomorphic-by-renaming graphs become structurally equal, so output
    files are byte-stable.
    """
    order_t, order_s, order_e = traversal_order(H)
    perm: dict[int, int] = {}
    for v in order_t:
        perm[v] = len(perm)
    for v in order_s:
        perm[v] = len(perm)
    for e in order_e:
        perm[e] = len(perm)
    for e in H.edges:  # 0->0 edges carry no vertices, so the walk misses them
        perm.setdefault(e, len(perm))
    return rename(H, perm)


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    """Three component maps between linear hypergraphs."""

    src: LinearHypergraph
    dst: LinearHypergraph
    vmap_t: dict[int, int]
    vmap_s: dict[int, int]
    emap: dict[int, int]

    def apply_t(self, v: int) -> int:
        return self.vmap_t[v]

    def apply_s(self, v: int) -> int:
        return self.vmap_s[v]

    def is_embedding(self) -> bool:
        return (is_homomorphism(self)
                and len(set(self.vmap_t.values())) == len(self.vmap_t)
                and len(set(self.vmap_s.values())) == len(self.vmap_s)
                and len(set(self.emap.values())) == len(self.emap))

    def is_isomorphism(self) -> bool:
        F, G = self.src, self.dst
        if not self.is_embedding():
            return False
        if (len(F.targets) != len(G.targets)
                or len(F.sources) != len(G.sources)
                or len(F.edges) != len(G.edges)):
            return False
        fin, gin = F.inputs(), G.inputs()
        fout, gout = F.outputs(), G.outputs()
        if len(fin) != len(gin) or len(fout) != len(gout):
            return False
        if any(self.vmap_t[a] != b for a, b in zip(fin, gin)):
            return False
        if any(self.vmap_s[a] != b for a, b in zip(fout, gout)):
            return False
        return True

    def then(self, other: "Homomorphism") -> "Homomorphism":
        if other.src is not self.dst and other.src != self.dst:
            raise ValueError("homomorphisms do not compose")
        return Homomorphism(
            self.src, other.dst,
            {v: other.vmap_t[w] for v, w in self.vmap_t.items()},
            {v: other.vmap_s[w] for v, w in self.vmap_s.items()},
            {e: other.emap[d] for e, d in self.emap.items()},
        )


def identity_hom(H: LinearHypergraph) -> Homomorphism:
    return Homomorphism(H, H,
                        {v: v for v in H.targets},
                        {v: v for v in H.sources},
                        {e: e for e in H.edges})


def is_homomorphism(h: Homomorphism,
                    F: LinearHypergraph | None = None,
                    G: LinearHypergraph | None = None) -> bool:
    """Check the commuting conditions: sources, targets, connections,
    labels, and (when present) vertex labels."""
    F = F if F is not None else h.src
    G = G if G is not None else h.dst
    if set(h.vmap_t) != set(F.targets) or set(h.vmap_s) != set(F.sources):
        return False
    if set(h.emap) != set(F.edges):
        return False
    g_targets, g_sources, g_edges = (set(G.targets), set(G.sources),
                                     set(G.edges))
    if any(v not in g_targets for v in h.vmap_t.values()):
        return False
    if any(v not in g_sources for v in h.vmap_s.values()):
        return False
    if any(e not in g_edges for e in h.emap.values()):
        return False
    # connections
    for t in F.targets:
        if G.conn[h.vmap_t[t]] != h.vmap_s[F.conn[t]]:
            return False
    # edge structure: ordered ports map positionally, labels preserved
    ftgts, fsrcs = F.port_tables()
    gtgts, gsrcs = G.port_tables()
    for e in F.edges:
        d = h.emap[e]
        if F.labels[e] != G.labels[d]:
            return False
        if tuple(h.vmap_t[v] for v in ftgts[e]) != gtgts[d]:
            return False
        if tuple(h.vmap_s[v] for v in fsrcs[e]) != gsrcs[d]:
            return False
    # object labels
    for v in F.targets:
        if F.vtlabels[v] != G.vtlabels[h.vmap_t[v]]:
            return False
    for v in F.sources:
        if F.vslabels[v] != G.vslabels[h.vmap_s[v]]:
            return False
    return True


# ---------------------------------------------------------------------------
# Isomorphism search
# ---------------------------------------------------------------------------

def find_isomorphism(F: LinearHypergraph,
                     G: LinearHypergraph) -> Homomorphism | None:
    """A witness isomorphism, or None.

    Anchored on the ordered interfaces and propagated along wires and
    edge ports; interface-free loops are matched by backtracking over
    label-compatible edges.  Deterministic for fixed inputs.
    """
    if (len(F.targets) != len(G.targets) or len(F.sources) != len(G.sources)
            or len(F.edges) != len(G.edges)):
        return None
    if F.dom() != G.dom() or F.cod() != G.cod():
        return None
    if sorted(F.labels[e] for e in F.edges) != sorted(G.labels[e] for e in G.edges):
        return None

    ftgts, fsrcs = F.port_tables()
    gtgts, gsrcs = G.port_tables()
    fconn_inv, gconn_inv = F.conn_inv(), G.conn_inv()
    f_t_pos = {v: i for i, v in enumerate(F.targets)}
    f_port_t = {v: (e, i) for e in F.edges for i, v in enumerate(ftgts[e])}
    f_port_s = {v: (e, i) for e in F.edges for i, v in enumerate(fsrcs[e])}

    class Conflict(Exception):
        pass

    def solve(tmap: dict[int, int], smap: dict[int, int], emap: dict[int, int],
              used_t: set[int], used_s: set[int], used_e: set[int],
              agenda: list[tuple[str, int]]) -> Homomorphism | None:
        def put(kind: str, a: int, b: int) -> None:
            table, used = {"t": (tmap, used_t), "s": (smap, used_s),
                           "e": (emap, used_e)}[kind]
            if a in table:
                if table[a] != b:
                    raise Conflict
                return
            if b in used:
                raise Conflict
            table[a] = b
            used.add(b)
            agenda.append((kind, a))

        def propagate() -> None:
            while agenda:
                kind, a = agenda.pop()
                if kind == "t":
                    b = tmap[a]
                    if F.vtlabels[a] != G.vtlabels[b]:
                        raise Conflict
                    put("s", F.conn[a], G.conn[b])
                    if a in f_port_t:
                        e, i = f_port_t[a]
                        d = G.left[b]
                        if d is INTERFACE or G.labels[d] != F.labels[e]:
                            raise Conflict
                        if gtgts[d][i] != b:
                            raise Conflict
                        put("e", e, d)
                    elif G.left[b] is not INTERFACE:
                        raise Conflict
                elif kind == "s":
                    b = smap[a]
                    if F.vslabels[a] != G.vslabels[b]:
                        raise Conflict
                    put("t", fconn_inv[a], gconn_inv[b])
                    if a in f_port_s:
                        e, i = f_port_s[a]
                        d = G.right[b]
                        if d is INTERFACE or G.labels[d] != F.labels[e]:
                            raise Conflict
                        if gsrcs[d][i] != b:
                            raise Conflict
                        put("e", e, d)
                    elif G.right[b] is not INTERFACE:
                        raise Conflict
                else:
                    d = emap[a]
                    for u, w in zip(ftgts[a], gtgts[d]):
                        put("t", u, w)
                    for u, w in zip(fsrcs[a], gsrcs[d]):
                        put("s", u, w)

        try:
            propagate()
        except Conflict:
            return None

        pending = [e for e in F.edges if e not in emap]
        if not pending:
            h = Homomorphism(F, G, dict(tmap), dict(smap), dict(emap))
            return h if h.is_isomorphism() else None
        e = min(pending, key=lambda x: F.edges.index(x))
        for d in G.edges:
            if d in used_e or G.labels[d] != F.labels[e]:
                continue
            t2, s2, e2 = dict(tmap), dict(smap), dict(emap)
            u2t, u2s, u2e = set(used_t), set(used_s), set(used_e)
            try:
                e2[e] = d
                u2e.add(d)
                result = solve(t2, s2, e2, u2t, u2s, u2e, [("e", e)])
            except Conflict:
                continue
            if result is not None:
                return result
        return None

    tmap: dict[int, int] = {}
    smap: dict[int, int] = {}
    emap: dict[int, int] = {}
    used_t: set[int] = set()
    used_s: set[int] = set()
    used_e: set[int] = set()
    agenda: list[tuple[str, int]] = []
    for a, b in zip(F.inputs(), G.inputs()):
        tmap[a] = b
        used_t.add(b)
        agenda.append(("t", a))
    for a, b in zip(F.outputs(), G.outputs()):
        if a in smap:
            continue
        smap[a] = b
        used_s.add(b)
        agenda.append(("s", a))
    return solve(tmap, smap, emap, used_t, used_s, used_e, agenda)


def isomorphic(F: LinearHypergraph, G: LinearHypergraph) -> bool:
    return find_isomorphism(F, G) is not None


# ---------------------------------------------------------------------------
# Wire homeomorphisms
# ---------------------------------------------------------------------------

def expand(H: LinearHypergraph, w: int) -> LinearHypergraph:
    """Insert one identity edge on the wire leaving target vertex ``w``."""
    if w not in H.conn:
        raise ValueError(f"{w} is not a target vertex")
    t_new, s_new, e_new = fresh_ids(3)
    lab = H.vtlabels[w]
    conn = dict(H.conn)
    old = conn[w]
    conn[w] = s_new
    conn[t_new] = old
    return LinearHypergraph(
        targets=H.targets + (t_new,),
        sources=H.sources + (s_new,),
        edges=H.edges + (e_new,),
        left={**H.left, t_new: e_new},
        right={**H.right, s_new: e_new},
        conn=conn,
        labels={**H.labels, e_new: IDENTITY_LABEL},
        vtlabels={**H.vtlabels, t_new: lab},
        vslabels={**H.vslabels, s_new: lab},
    )


def smooth(H: LinearHypergraph) -> LinearHypergraph:
    """Remove every identity edge, splicing the wire through it."""
    idents = [e for e in H.edges if H.labels[e] == IDENTITY_LABEL]
    if not idents:
        return H
    tgts, srcs = H.port_tables()
    conn = dict(H.conn)
    conn_inv = {s: t for t, s in conn.items()}
    dead_t: set[int] = set()
    dead_s: set[int] = set()
    for e in idents:
        (t_e,), (s_e,) = tgts[e], srcs[e]
        before = conn_inv[s_e]
        if before == t_e:
            # a loop made of this identity edge alone: it vanishes
            del conn[t_e]
        else:
            after = conn[t_e]
            conn[before] = after
            conn_inv[after] = before
            del conn[t_e]
        dead_t.add(t_e)
        dead_s.add(s_e)
    return LinearHypergraph(
        targets=tuple(v for v in H.targets if v not in dead_t),
        sources=tuple(v for v in H.sources if v not in dead_s),
        edges=tuple(e for e in H.edges if e not in idents),
        left={v: e for v, e in H.left.items() if v not in dead_t},
        right={v: e for v, e in H.right.items() if v not in dead_s},
        conn=conn,
        labels={e: lab for e, lab in H.labels.items() if e not in idents},
        vtlabels={v: lab for v, lab in H.vtlabels.items() if v not in dead_t},
        vslabels={v: lab for v, lab in H.vslabels.items() if v not in dead_s},
    )


# ---------------------------------------------------------------------------
# Inclusion into simple hypergraphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimpleHypergraph:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    src: dict[int, tuple[int, ...]]
    tgt: dict[int, tuple[int, ...]]
    labels: dict[int, str]

    def is_linear_shape(self) -> bool:
        """Every vertex occurs at most once among all edge sources, and
        at most once among all edge targets."""
        for table in (self.src, self.tgt):
            seen: set[int] = set()
            for e in self.edges:
                for v in table[e]:
                    if v in seen:
                        return False
                    seen.add(v)
        return True


def to_simple(H: LinearHypergraph) -> SimpleHypergraph:
    """Collapse each wire onto its source endpoint."""
    tgts, srcs = H.port_tables()
    return SimpleHypergraph(
        vertices=H.sources,
        edges=H.edges,
        src={e: srcs[e] for e in H.edges},
        tgt={e: tuple(H.conn[v] for v in tgts[e]) for e in H.edges},
        labels=dict(H.labels),
    )
