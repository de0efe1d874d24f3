"""Open-graph diagrams with ordered boundaries.

Every node port and every boundary slot is an *end*; a diagram is a perfect
matching of its ends (the edges) plus a count of closed loops.  Ends are
tuples::

    ("n", node_id, port)   ports 0..n-1 are inputs, n..n+m-1 outputs
    ("i", k)               input slot k
    ("o", k)               output slot k

A bare wire is the edge ``(("i", 0), ("o", 0))``; a cap joins two output
slots and a cup two input slots.  ``compose(d1, d2)`` is ``d1`` after ``d2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Mapping

from .errors import ArityMismatch, IllegalArity
from .scalars import conj, scalar_from_json, scalar_to_json, values_close

End = tuple


class Kind(str, Enum):
    Z = "Z"
    X = "X"
    H = "H"
    T = "T"
    TINV = "Tinv"
    HBOX = "HBox"


FIXED_ARITY = frozenset({Kind.H, Kind.T, Kind.TINV})
PARAM_KINDS = frozenset({Kind.Z, Kind.X, Kind.HBOX})
# kinds whose tensor is invariant under any permutation of its legs
SYMMETRIC = frozenset({Kind.Z, Kind.X, Kind.H, Kind.HBOX})


def default_param(kind: Kind):
    if kind is Kind.HBOX:
        return -1
    if kind in PARAM_KINDS:
        return 1
    return None


@dataclass(frozen=True)
class Node:
    kind: Kind
    n: int
    m: int
    param: Any = None

    @property
    def arity(self) -> int:
        return self.n + self.m

    def with_arity(self, n: int, m: int) -> Node:
        return Node(self.kind, n, m, self.param)


def port_end(node: int, port: int) -> End:
    return ("n", node, port)


def _edge(a: End, b: End) -> tuple[End, End]:
    return (a, b) if a <= b else (b, a)


class Diagram:
    """Immutable open graph; build through the module-level constructors."""

    __slots__ = ("nodes", "edges", "n_in", "n_out", "loops", "_partner")

    def __init__(
        self,
        nodes: Mapping[int, Node],
        edges: Iterable[tuple[End, End]],
        n_in: int,
        n_out: int,
        loops: int = 0,
    ) -> None:
        object.__setattr__(self, "nodes", dict(sorted(nodes.items())))
        object.__setattr__(self, "edges", tuple(sorted(_edge(a, b) for a, b in edges)))
        object.__setattr__(self, "n_in", n_in)
        object.__setattr__(self, "n_out", n_out)
        object.__setattr__(self, "loops", loops)
        object.__setattr__(self, "_partner", None)

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    @property
    def partner(self) -> dict[End, End]:
        if self._partner is None:
            p: dict[End, End] = {}
            for a, b in self.edges:
                p[a] = b
                p[b] = a
            object.__setattr__(self, "_partner", p)
        return self._partner

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_in, self.n_out

    def ports(self, nid: int) -> list[End]:
        return [port_end(nid, p) for p in range(self.nodes[nid].arity)]

    def neighbours(self, nid: int) -> list[End]:
        return [self.partner.get(e) for e in self.ports(nid)]

    def is_scalar(self) -> bool:
        return self.n_in == 0 and self.n_out == 0

    def __repr__(self) -> str:
        body = ", ".join(
            f"n{i}:{nd.kind.value}({nd.n},{nd.m}{'' if nd.param is None else ','+str(nd.param)})"
            for i, nd in self.nodes.items()
        )
        return f"Diagram({self.n_in}->{self.n_out}; {body}; {len(self.edges)} edges, {self.loops} loops)"

    # convenience operators: d1 @ d2 is d1 after d2, d1 * d2 is the tensor
    def __matmul__(self, other: Diagram) -> Diagram:
        return compose(self, other)

    def __mul__(self, other: Diagram) -> Diagram:
        return tensor(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Diagram) and structural_eq(self, other)

    __hash__ = None  # type: ignore[assignment]


# ---------------------------------------------------------------------------
# splicing


def splice(partner: Mapping[End, End], glue: Mapping[End, End]) -> tuple[list, int]:
    """Contract every chain through ``glue`` ends into a single edge.

    ``partner`` and ``glue`` are involutions; ``glue`` ends are identified in
    pairs and disappear.  Chains closing on themselves become loops.
    """
    edges = []
    seen: set = set()
    for e in partner:
        if e in glue or e in seen:
            continue
        cur = partner[e]
        while cur in glue:
            seen.add(cur)
            nxt = glue[cur]
            seen.add(nxt)
            cur = partner[nxt]
        seen.add(e)
        seen.add(cur)
        edges.append((e, cur))
    loops = 0
    for g in glue:
        if g in seen:
            continue
        loops += 1
        cur = g
        while cur not in seen:
            seen.add(cur)
            nxt = glue[cur]
            seen.add(nxt)
            cur = partner[nxt]
    return edges, loops


def _relabel(d: Diagram, node_map: Mapping[int, int], bmap) -> list[tuple[End, End]]:
    def f(e: End) -> End:
        if e[0] == "n":
            return ("n", node_map[e[1]], e[2])
        return bmap(e)

    return [(f(a), f(b)) for a, b in d.edges]


def _partner_of(edges) -> dict[End, End]:
    p = {}
    for a, b in edges:
        p[a] = b
        p[b] = a
    return p


# ---------------------------------------------------------------------------
# composition


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    """``d1`` after ``d2``: the outputs of ``d2`` feed the inputs of ``d1``."""
    if d1.n_in != d2.n_out:
        raise ArityMismatch(f"cannot feed {d2.n_out} outputs into {d1.n_in} inputs")
    map2 = {old: new for new, old in enumerate(d2.nodes)}
    map1 = {old: new for new, old in enumerate(d1.nodes, start=len(map2))}
    e2 = _relabel(d2, map2, lambda e: e if e[0] == "i" else ("g2", e[1]))
    e1 = _relabel(d1, map1, lambda e: e if e[0] == "o" else ("g1", e[1]))
    glue = {}
    for k in range(d1.n_in):
        glue[("g2", k)] = ("g1", k)
        glue[("g1", k)] = ("g2", k)
    edges, loops = splice(_partner_of(e2 + e1), glue)
    nodes = {map2[i]: nd for i, nd in d2.nodes.items()}
    nodes.update({map1[i]: nd for i, nd in d1.nodes.items()})
    return Diagram(nodes, edges, d2.n_in, d1.n_out, d1.loops + d2.loops + loops)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Disjoint union; the boundary slots of ``d1`` come first."""
    map1 = {old: new for new, old in enumerate(d1.nodes)}
    map2 = {old: new for new, old in enumerate(d2.nodes, start=len(map1))}
    e1 = _relabel(d1, map1, lambda e: e)
    shift = {"i": d1.n_in, "o": d1.n_out}
    e2 = _relabel(d2, map2, lambda e: (e[0], e[1] + shift[e[0]]))
    nodes = {map1[i]: nd for i, nd in d1.nodes.items()}
    nodes.update({map2[i]: nd for i, nd in d2.nodes.items()})
    return Diagram(nodes, e1 + e2, d1.n_in + d2.n_in, d1.n_out + d2.n_out, d1.loops + d2.loops)


def compose_all(*ds: Diagram) -> Diagram:
    """``compose_all(a, b, c)`` is ``a`` after ``b`` after ``c``."""
    out = ds[-1]
    for d in reversed(ds[:-1]):
        out = compose(d, out)
    return out


def tensor_all(*ds: Diagram) -> Diagram:
    out = empty()
    for d in ds:
        out = tensor(out, d)
    return out


def sequence(*ds: Diagram) -> Diagram:
    """Top-to-bottom reading order: ``ds[0]`` is applied first."""
    return compose_all(*reversed(ds))


def _swap_bound(e: End) -> End:
    if e[0] == "i":
        return ("o", e[1])
    if e[0] == "o":
        return ("i", e[1])
    return e


def transpose(d: Diagram) -> Diagram:
    """Exchange inputs and outputs; the matrix of the result is the transpose.

    Symmetric nodes are flipped too, so their inputs stay on the input side;
    triangles keep their orientation and are simply wired the other way.
    """
    flip = {nid for nid, nd in d.nodes.items() if nd.kind in SYMMETRIC}

    def f(e: End) -> End:
        if e[0] == "n":
            if e[1] not in flip:
                return e
            nd = d.nodes[e[1]]
            q = e[2] + nd.m if e[2] < nd.n else e[2] - nd.n
            return ("n", e[1], q)
        return _swap_bound(e)

    nodes = {nid: nd.with_arity(nd.m, nd.n) if nid in flip else nd for nid, nd in d.nodes.items()}
    edges = [(f(a), f(b)) for a, b in d.edges]
    return Diagram(nodes, edges, d.n_out, d.n_in, d.loops)


def adjoint(d: Diagram) -> Diagram:
    t = transpose(d)
    nodes = {
        i: Node(nd.kind, nd.n, nd.m, conj(nd.param)) if nd.kind in PARAM_KINDS else nd
        for i, nd in t.nodes.items()
    }
    return Diagram(nodes, t.edges, t.n_in, t.n_out, t.loops)


def renumber(d: Diagram) -> Diagram:
    """Relabel nodes as 0..k-1 in their current order."""
    mp = {old: new for new, old in enumerate(d.nodes)}
    return Diagram(
        {mp[i]: nd for i, nd in d.nodes.items()},
        _relabel(d, mp, lambda e: e),
        d.n_in,
        d.n_out,
        d.loops,
    )


def with_loops(d: Diagram, loops: int) -> Diagram:
    return Diagram(d.nodes, d.edges, d.n_in, d.n_out, loops)


# ---------------------------------------------------------------------------
# generators


def make_generator(kind: Kind | str, n: int, m: int, param=None) -> Diagram:
    kind = Kind(kind)
    if n < 0 or m < 0:
        raise IllegalArity(f"negative arity ({n},{m})")
    if kind in FIXED_ARITY and (n, m) != (1, 1):
        raise IllegalArity(f"{kind.value} must be 1->1, got ({n},{m})")
    if kind in PARAM_KINDS:
        if param is None:
            param = default_param(kind)
    elif param is not None:
        raise IllegalArity(f"{kind.value} takes no parameter")
    node = Node(kind, n, m, param)
    edges = [(("i", k), port_end(0, k)) for k in range(n)]
    edges += [(("o", k), port_end(0, n + k)) for k in range(m)]
    return Diagram({0: node}, edges, n, m)


def Z(n: int = 1, m: int = 1, a=1) -> Diagram:
    return make_generator(Kind.Z, n, m, a)


def X(n: int = 1, m: int = 1, a=1) -> Diagram:
    return make_generator(Kind.X, n, m, a)


def H() -> Diagram:
    return make_generator(Kind.H, 1, 1)


def T() -> Diagram:
    return make_generator(Kind.T, 1, 1)


def Tinv() -> Diagram:
    return make_generator(Kind.TINV, 1, 1)


def Td() -> Diagram:
    """The upside-down triangle, matrix [[1,0],[1,1]]."""
    return transpose(T())


def Tdinv() -> Diagram:
    return transpose(Tinv())


def HBox(n: int = 1, m: int = 1, a=-1) -> Diagram:
    return make_generator(Kind.HBOX, n, m, a)


def empty() -> Diagram:
    return Diagram({}, [], 0, 0)


def identity(k: int = 1) -> Diagram:
    return Diagram({}, [(("i", j), ("o", j)) for j in range(k)], k, k)


def permutation(perm: list[int]) -> Diagram:
    """Wire input ``perm[j]`` to output ``j``."""
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a permutation: {perm}")
    return Diagram({}, [(("i", p), ("o", j)) for j, p in enumerate(perm)], len(perm), len(perm))


def swap() -> Diagram:
    return permutation([1, 0])


def cap() -> Diagram:
    return Diagram({}, [(("o", 0), ("o", 1))], 0, 2)


def cup() -> Diagram:
    return Diagram({}, [(("i", 0), ("i", 1))], 2, 0)


def circle() -> Diagram:
    return Diagram({}, [], 0, 0, loops=1)


def scalar(c) -> Diagram:
    """A 0->0 Z spider denoting the number ``c``."""
    return Z(0, 0, c - 1)


# ---------------------------------------------------------------------------
# validation


def _fmt(e: End) -> str:
    if e[0] == "n":
        return f"port (n{e[1]},{e[2]})"
    return f"{'input' if e[0] == 'i' else 'output'} slot {e[1]}"


def validate(d: Diagram) -> list[str]:
    problems: list[str] = []
    for nid, nd in d.nodes.items():
        try:
            kind = Kind(nd.kind)
        except ValueError:
            problems.append(f"node n{nid} has unknown kind {nd.kind!r}")
            continue
        if nd.n < 0 or nd.m < 0:
            problems.append(f"node n{nid} has negative arity")
        if kind in FIXED_ARITY and (nd.n, nd.m) != (1, 1):
            problems.append(f"node n{nid} of kind {kind.value} has arity ({nd.n},{nd.m})")
        if kind in PARAM_KINDS and nd.param is None:
            problems.append(f"node n{nid} is missing its parameter")
        if kind not in PARAM_KINDS and nd.param is not None:
            problems.append(f"node n{nid} of kind {kind.value} carries a parameter")
    if d.loops < 0:
        problems.append("negative loop count")
    count: dict[End, int] = {}
    for a, b in d.edges:
        for e in (a, b):
            count[e] = count.get(e, 0) + 1
    for e, c in count.items():
        if e[0] == "n":
            nd = d.nodes.get(e[1])
            if nd is None:
                problems.append(f"edge refers to missing node n{e[1]}")
                continue
            if not 0 <= e[2] < nd.arity:
                problems.append(f"{_fmt(e)} does not exist")
                continue
        elif e[0] in ("i", "o"):
            size = d.n_in if e[0] == "i" else d.n_out
            if not 0 <= e[1] < size:
                problems.append(f"{_fmt(e)} out of range")
                continue
        else:
            problems.append(f"malformed end {e!r}")
            continue
        if c > 1:
            problems.append(f"{_fmt(e)} used {c} times")
    for nid, nd in d.nodes.items():
        for p in range(max(nd.arity, 0)):
            if port_end(nid, p) not in count:
                problems.append(f"{_fmt(port_end(nid, p))} unwired")
    for k in range(d.n_in):
        if ("i", k) not in count:
            problems.append(f"input slot {k} unwired")
    for k in range(d.n_out):
        if ("o", k) not in count:
            problems.append(f"output slot {k} unwired")
    return problems


# ---------------------------------------------------------------------------
# isomorphism


def _node_key(nd: Node):
    return (nd.kind, nd.n, nd.m)


def _params_equal(a, b) -> bool:
    if a is None or b is None:
        return a is b
    return values_close(a, b, 0.0)


def structural_eq(d1: Diagram, d2: Diagram) -> bool:
    """Boundary-preserving isomorphism matching kinds and parameters exactly."""
    if (d1.n_in, d1.n_out, d1.loops) != (d2.n_in, d2.n_out, d2.loops):
        return False
    if len(d1.nodes) != len(d2.nodes) or len(d1.edges) != len(d2.edges):
        return False
    if sorted(map(_node_key, d1.nodes.values()), key=repr) != sorted(
        map(_node_key, d2.nodes.values()), key=repr
    ):
        return False
    return _iso_search(d1, d2)


def _iso_search(d1: Diagram, d2: Diagram) -> bool:
    p1, p2 = d1.partner, d2.partner

    def compatible(u: int, v: int) -> bool:
        a, b = d1.nodes[u], d2.nodes[v]
        return _node_key(a) == _node_key(b) and _params_equal(a.param, b.param)

    def run(nmap, pmap, used_n, used_p, work) -> bool:
        nmap, pmap, used_n, used_p = dict(nmap), dict(pmap), set(used_n), set(used_p)
        work = list(work)
        while work:
            a, b = work.pop()
            if a[0] != "n" or b[0] != "n":
                if a != b:
                    return False
                continue
            u, v = a[1], b[1]
            if u in nmap:
                if nmap[u] != v:
                    return False
            else:
                if v in used_n or not compatible(u, v):
                    return False
                nmap[u] = v
                used_n.add(v)
            if a in pmap:
                if pmap[a] != b:
                    return False
                continue
            if b in used_p:
                return False
            if d1.nodes[u].kind not in SYMMETRIC and a[2] != b[2]:
                return False
            pmap[a] = b
            used_p.add(b)
            work.append((p1[a], p2[b]))
        # branch on an unmapped port of a mapped node
        for u, v in nmap.items():
            for p in range(d1.nodes[u].arity):
                a = port_end(u, p)
                if a in pmap:
                    continue
                if d1.nodes[u].kind in SYMMETRIC:
                    cands = [port_end(v, q) for q in range(d2.nodes[v].arity)]
                else:
                    cands = [port_end(v, p)]
                for b in cands:
                    if b not in used_p and run(nmap, pmap, used_n, used_p, [(a, b)]):
                        return True
                return False
        rest = [u for u in d1.nodes if u not in nmap]
        if not rest:
            return True
        u = rest[0]
        for v in d2.nodes:
            if v in used_n or not compatible(u, v):
                continue
            if d1.nodes[u].arity == 0:
                if run({**nmap, u: v}, pmap, used_n | {v}, used_p, []):
                    return True
                continue
            a = port_end(u, 0)
            cands = range(d2.nodes[v].arity) if d1.nodes[u].kind in SYMMETRIC else [0]
            for q in cands:
                if run(nmap, pmap, used_n, used_p, [(a, port_end(v, q))]):
                    return True
        return False

    start = []
    for k in range(d1.n_in):
        start.append((p1[("i", k)], p2[("i", k)]))
    for k in range(d1.n_out):
        start.append((p1[("o", k)], p2[("o", k)]))
    return run({}, {}, set(), set(), start)


# ---------------------------------------------------------------------------
# JSON


def _ep_to_json(e: End, ids: Mapping[int, str]) -> dict:
    if e[0] == "n":
        return {"node": ids[e[1]], "port": e[2]}
    return {"bound": "in" if e[0] == "i" else "out", "index": e[1]}


def to_json(d: Diagram) -> dict:
    ids = {nid: f"n{nid}" for nid in d.nodes}
    nodes = []
    for nid, nd in d.nodes.items():
        obj: dict = {"id": ids[nid], "kind": nd.kind.value, "n": nd.n, "m": nd.m}
        if nd.param is not None:
            obj["param"] = scalar_to_json(nd.param)
        nodes.append(obj)
    p = d.partner
    out: dict = {
        "nodes": nodes,
        "edges": [
            [_ep_to_json(a, ids), _ep_to_json(b, ids)]
            for a, b in d.edges
            if a[0] == "n" and b[0] == "n"
        ],
        "inputs": [_ep_to_json(p[("i", k)], ids) for k in range(d.n_in)],
        "outputs": [_ep_to_json(p[("o", k)], ids) for k in range(d.n_out)],
    }
    if d.loops:
        out["loops"] = d.loops
    return out


def from_json(obj: Mapping) -> Diagram:
    ids: dict[str, int] = {}
    nodes: dict[int, Node] = {}
    for k, raw in enumerate(obj.get("nodes", [])):
        sid = str(raw["id"])
        if sid in ids:
            raise ValueError(f"duplicate node id {sid}")
        ids[sid] = k
        kind = Kind(raw["kind"])
        param = raw.get("param")
        param = default_param(kind) if param is None else scalar_from_json(param)
        if kind not in PARAM_KINDS:
            param = None
        nodes[k] = Node(kind, int(raw["n"]), int(raw["m"]), param)

    def ep(e: Mapping) -> End:
        if "bound" in e:
            if e["bound"] not in ("in", "out"):
                raise ValueError(f"bad boundary side {e['bound']!r}")
            return ("i" if e["bound"] == "in" else "o", int(e["index"]))
        return ("n", ids[str(e["node"])], int(e["port"]))

    edges: set = set()
    for a, b in obj.get("edges", []):
        edges.add(_edge(ep(a), ep(b)))
    inputs = obj.get("inputs", [])
    outputs = obj.get("outputs", [])
    for k, e in enumerate(inputs):
        edges.add(_edge(("i", k), ep(e)))
    for k, e in enumerate(outputs):
        edges.add(_edge(("o", k), ep(e)))
    return Diagram(nodes, edges, len(inputs), len(outputs), int(obj.get("loops", 0)))
