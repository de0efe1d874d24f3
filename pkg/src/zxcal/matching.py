"""Subgraph matching of pattern diagrams in hosts, and replacement.

A pattern node marked *open* may match a host node of the same kind with more
legs; the surplus legs are carried over to a designated node of the
replacement.  Legs of symmetric kinds (Z, X, H, HBox) are interchangeable, so
a pattern leg may land on any host leg of its image node.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Optional

from .diagram import SYMMETRIC, Diagram, End, Node, port_end, splice
from .errors import StaleEmbedding
from .params import Expr, solve_for
from .scalars import values_close


@dataclass(frozen=True)
class Embedding:
    node_map: Mapping[int, int]
    port_map: Mapping[End, End]
    edges: frozenset  # host edges that are images of pattern edges
    boundary: tuple[End, ...]  # host ports under pattern inputs, then outputs
    extra: Mapping[int, tuple[End, ...]]  # open pattern node -> surplus host ports
    loops: int = 0
    bindings: Mapping[str, Any] = field(default_factory=dict)
    host_nodes: Mapping[int, Node] = field(default_factory=dict)

    def key(self) -> tuple:
        return (
            frozenset(self.node_map.values()),
            self.edges,
            frozenset(self.boundary),
            self.loops,
        )

    def sort_key(self) -> tuple:
        return (sorted(self.node_map.values()), sorted(self.boundary), self.loops)


def _is_port(e: End) -> bool:
    return e[0] == "n"


class _Matcher:
    def __init__(self, pattern: Diagram, host: Diagram, open_nodes: Iterable[int]) -> None:
        self.p = pattern
        self.h = host
        self.open = frozenset(open_nodes)
        self.pp = pattern.partner
        self.hp = host.partner
        self.edge_of = {}
        for a, b in host.edges:
            self.edge_of[a] = (a, b)
            self.edge_of[b] = (a, b)
        self.internal = {
            u: [q for q in range(nd.arity) if _is_port(self.pp[port_end(u, q)])]
            for u, nd in pattern.nodes.items()
        }
        self.bports = {
            u: [q for q in range(nd.arity) if not _is_port(self.pp[port_end(u, q)])]
            for u, nd in pattern.nodes.items()
        }
        self.results: dict[tuple, Embedding] = {}

    def compatible(self, u: int, v: int) -> bool:
        a, b = self.p.nodes[u], self.h.nodes[v]
        if a.kind != b.kind:
            return False
        if u in self.open and a.kind in SYMMETRIC:
            if b.arity < a.arity:
                return False
        elif a.kind in SYMMETRIC:
            if b.arity != a.arity:
                return False
        elif (a.n, a.m) != (b.n, b.m):
            return False
        if a.param is not None and not isinstance(a.param, Expr):
            return values_close(a.param, b.param)
        return True

    def port_ok(self, a: End, b: End) -> bool:
        if self.p.nodes[a[1]].kind in SYMMETRIC:
            return True
        return a[2] == b[2]

    # state = (nmap, pmap, used_nodes, used_ports, edges)
    def run(self, state, work) -> None:
        nmap, pmap, used_n, used_p, edges = (
            dict(state[0]),
            dict(state[1]),
            set(state[2]),
            set(state[3]),
            set(state[4]),
        )
        work = list(work)
        while work:
            a, b = work.pop()
            if not _is_port(b):
                return
            u, v = a[1], b[1]
            if u in nmap:
                if nmap[u] != v:
                    return
            else:
                if v in used_n or not self.compatible(u, v):
                    return
                nmap[u] = v
                used_n.add(v)
            if a in pmap:
                if pmap[a] != b:
                    return
                continue
            if b in used_p or not self.port_ok(a, b):
                return
            pmap[a] = b
            used_p.add(b)
            edges.add(self.edge_of[b])
            work.append((self.pp[a], self.hp[b]))
        state = (nmap, pmap, used_n, used_p, edges)

        for u, v in nmap.items():
            for q in self.internal[u]:
                a = port_end(u, q)
                if a in pmap:
                    continue
                for b in self._candidate_ports(a, v, used_p):
                    self.run(state, [(a, b)])
                return

        for u in self.p.nodes:
            if u in nmap:
                continue
            for v in self.h.nodes:
                if v in used_n or not self.compatible(u, v):
                    continue
                if self.internal[u]:
                    a = port_end(u, self.internal[u][0])
                    for b in self._candidate_ports(a, v, used_p):
                        self.run(state, [(a, b)])
                else:
                    self.run(({**nmap, u: v}, pmap, used_n | {v}, used_p, edges), [])
            return

        self.finish(nmap, pmap, used_p, edges)

    def _candidate_ports(self, a: End, v: int, used_p) -> list[End]:
        if self.p.nodes[a[1]].kind in SYMMETRIC:
            qs = range(self.h.nodes[v].arity)
        else:
            qs = [a[2]]
        return [port_end(v, q) for q in qs if port_end(v, q) not in used_p]

    def finish(self, nmap, pmap, used_p, edges) -> None:
        if self.h.loops < self.p.loops:
            return
        per_node = []
        for u, v in nmap.items():
            free = [port_end(v, q) for q in range(self.h.nodes[v].arity) if port_end(v, q) not in used_p]
            need = [port_end(u, q) for q in self.bports[u]]
            if self.p.nodes[u].kind not in SYMMETRIC:
                if any(port_end(v, a[2]) not in free for a in need):
                    return
                per_node.append([(u, [(a, port_end(v, a[2])) for a in need], [])])
                continue
            if u in self.open:
                opts = []
                for chosen in itertools.combinations(free, len(need)):
                    rest = tuple(b for b in free if b not in chosen)
                    opts.append((u, list(zip(need, chosen)), rest))
                per_node.append(opts)
            else:
                if len(free) != len(need):
                    return
                per_node.append([(u, list(zip(need, free)), [])])
        bindings = self.unify(nmap)
        if bindings is None:
            return
        for combo in itertools.product(*per_node):
            full = dict(pmap)
            extra = {}
            for u, pairs, rest in combo:
                full.update(pairs)
                if u in self.open:
                    extra[u] = tuple(rest)
            bslots = [self.pp[("i", k)] for k in range(self.p.n_in)]
            bslots += [self.pp[("o", k)] for k in range(self.p.n_out)]
            emb = Embedding(
                node_map=dict(nmap),
                port_map=full,
                edges=frozenset(edges),
                boundary=tuple(full[e] for e in bslots),
                extra=extra,
                loops=self.p.loops,
                bindings=bindings,
                host_nodes={v: self.h.nodes[v] for v in nmap.values()},
            )
            self.results.setdefault(emb.key(), emb)

    def unify(self, nmap) -> Optional[dict]:
        eqs = []
        for u, v in nmap.items():
            par = self.p.nodes[u].param
            if isinstance(par, Expr):
                eqs.append((par, self.h.nodes[v].param))
        env: dict[str, Any] = {}
        progress = True
        while progress:
            progress = False
            for expr, val in eqs:
                free = expr.variables() - env.keys()
                if len(free) != 1:
                    continue
                sol = solve_for(expr, val)
                if sol is not None:
                    env[sol[0]] = sol[1]
                    progress = True
        for expr, val in eqs:
            if expr.variables() - env.keys():
                return None
            try:
                got = expr.evaluate(env)
            except (ZeroDivisionError, ValueError, OverflowError):
                return None
            if not values_close(got, val):
                return None
        return env


def find_matches(
    pattern: Diagram, host: Diagram, open_nodes: Iterable[int] = ()
) -> list[Embedding]:
    """All embeddings of ``pattern`` in ``host``, deduplicated, in host node order."""
    if any(not _is_port(a) and not _is_port(b) for a, b in pattern.edges):
        return []
    if not pattern.nodes:
        if host.loops >= pattern.loops and pattern.loops > 0:
            return [Embedding({}, {}, frozenset(), (), {}, pattern.loops)]
        return []
    m = _Matcher(pattern, host, open_nodes)
    m.run(({}, {}, set(), set(), set()), [])
    return sorted(m.results.values(), key=Embedding.sort_key)


def check_embedding(host: Diagram, pattern: Diagram, emb: Embedding) -> None:
    """Raise :class:`StaleEmbedding` unless ``emb`` still fits ``host``."""
    for v, nd in emb.host_nodes.items():
        if host.nodes.get(v) != nd:
            raise StaleEmbedding(f"host node n{v} changed or vanished")
    hp = host.partner
    for e in emb.edges:
        if hp.get(e[0]) != e[1]:
            raise StaleEmbedding(f"host edge {e} no longer present")
    for a, b in emb.port_map.items():
        if b[0] != "n" or b[1] not in host.nodes or b[2] >= host.nodes[b[1]].arity:
            raise StaleEmbedding(f"host port {b} does not exist")
        pa = pattern.partner.get(a)
        if pa is not None and _is_port(pa):
            if hp.get(b) != emb.port_map.get(pa):
                raise StaleEmbedding(f"pattern edge at {a} not mirrored in host")
    if host.loops < emb.loops:
        raise StaleEmbedding("host has fewer closed loops than matched")
    if len(emb.boundary) != pattern.n_in + pattern.n_out:
        raise StaleEmbedding("boundary size differs from pattern")


def replace(
    host: Diagram,
    emb: Embedding,
    rhs: Diagram,
    anchors: Mapping[int, int] | None = None,
) -> Diagram:
    """Swap the image of ``emb`` for ``rhs``, glued along the matched boundary."""
    anchors = anchors or {}
    n_in = rhs.n_in
    if rhs.n_in + rhs.n_out != len(emb.boundary):
        raise StaleEmbedding("replacement arity differs from embedding boundary")
    matched = set(emb.node_map.values())
    partner: dict[End, End] = {}
    for a, b in host.edges:
        if (a, b) in emb.edges:
            continue
        partner[a] = b
        partner[b] = a

    offset = max(list(host.nodes) + [-1]) + 1
    rnodes = {nid + offset: nd for nid, nd in rhs.nodes.items()}

    # grow anchor nodes by the surplus legs of their open pattern nodes
    port_shift: dict[int, tuple[int, int]] = {}
    extra_edges = []
    glue: dict[End, End] = {}
    grow: dict[int, list[End]] = {}
    for u, ports in emb.extra.items():
        if ports:
            grow.setdefault(anchors[u], []).extend(ports)
    xid = 0
    for r, ports in grow.items():
        nd = rhs.nodes[r]
        if nd.kind not in SYMMETRIC:
            raise StaleEmbedding("surplus legs need a symmetric anchor")
        ins = [b for b in ports if b[2] < host.nodes[b[1]].n]
        outs = [b for b in ports if b[2] >= host.nodes[b[1]].n]
        port_shift[r] = (nd.n, len(ins))
        rnodes[r + offset] = Node(nd.kind, nd.n + len(ins), nd.m + len(outs), nd.param)
        new_ports = list(range(nd.n, nd.n + len(ins)))
        new_ports += list(range(nd.n + len(ins) + nd.m, nd.n + len(ins) + nd.m + len(outs)))
        for q, b in zip(new_ports, ins + outs):
            x = ("x", xid)
            xid += 1
            extra_edges.append((("n", r + offset, q), x))
            glue[x] = b
            glue[b] = x

    def relabel(e: End) -> End:
        if e[0] == "n":
            q = e[2]
            if e[1] in port_shift:
                n0, add = port_shift[e[1]]
                if q >= n0:
                    q += add
            return ("n", e[1] + offset, q)
        return ("ri" if e[0] == "i" else "ro", e[1])

    for a, b in list(rhs.edges):
        ra, rb = relabel(a), relabel(b)
        partner[ra] = rb
        partner[rb] = ra
    for a, b in extra_edges:
        partner[a] = b
        partner[b] = a
    for k, hport in enumerate(emb.boundary):
        tag = ("ri", k) if k < n_in else ("ro", k - n_in)
        glue[tag] = hport
        glue[hport] = tag
    # ports of matched nodes that are neither glued nor internal cannot survive
    for e in list(partner):
        if e[0] == "n" and e[1] in matched and e not in glue:
            raise StaleEmbedding(f"matched port {e} is not accounted for")

    edges, loops = splice(partner, glue)
    nodes = {nid: nd for nid, nd in host.nodes.items() if nid not in matched}
    nodes.update(rnodes)
    return Diagram(nodes, edges, host.n_in, host.n_out, host.loops - emb.loops + rhs.loops + loops)
