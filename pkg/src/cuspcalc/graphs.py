"""Weighted dual graphs of SNC divisors and blow-down simulation.

Vertex weights are self-intersection numbers (so a chain entry ``a`` becomes
the weight ``-a``).  Graphs are immutable; every rewrite returns a new graph
and keeps the ids of surviving vertices.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .chains import LinearChain, adjoint, format_chain, tw

__all__ = [
    "BlowDownError",
    "ContractionStep",
    "ContractionStuck",
    "ContractionTrace",
    "CycleError",
    "DegreeError",
    "DualGraph",
    "NotContractible",
    "Vertex",
    "WeightError",
    "blow_down",
    "blow_up",
    "chain_graph",
    "chain_shrinks_to_zero",
    "contract_to_point",
    "shrink_chain",
    "simulate_contraction",
]

SPROUTING = "sprouting"
SUBDIVISIONAL = "subdivisional"


class BlowDownError(ValueError):
    """A vertex cannot be blown down."""


class WeightError(BlowDownError):
    pass


class DegreeError(BlowDownError):
    pass


class CycleError(BlowDownError):
    pass


class ContractionStuck(ValueError):
    """No contractible vertex is left although the graph is not yet a point."""

    def __init__(self, message: str, graph: "DualGraph"):
        super().__init__(message)
        self.graph = graph


class NotContractible(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: int
    weight: int
    label: Optional[str] = None


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class DualGraph:
    """A forest of weighted vertices with simple edges."""

    vertices: tuple[Vertex, ...] = ()
    edges: frozenset = frozenset()
    _adj: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        verts = tuple(sorted(self.vertices, key=lambda v: v.id))
        object.__setattr__(self, "vertices", verts)
        ids = [v.id for v in verts]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate vertex ids")
        adj = {i: set() for i in ids}
        edges = set()
        for e in self.edges:
            u, v = tuple(e)
            if u == v:
                raise ValueError(f"self-edge at vertex {u}")
            if u not in adj or v not in adj:
                raise ValueError(f"edge ({u},{v}) references an unknown vertex")
            edges.add(_edge(u, v))
        object.__setattr__(self, "edges", frozenset(edges))
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", {i: frozenset(s) for i, s in adj.items()})
        if len(edges) != len(ids) - len(self.components()):
            raise CycleError("dual graph must be a forest")

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vid) -> bool:
        return vid in self._adj

    @property
    def ids(self) -> list[int]:
        return [v.id for v in self.vertices]

    def vertex(self, vid: int) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def weight(self, vid: int) -> int:
        return self.vertex(vid).weight

    def neighbors(self, vid: int) -> list[int]:
        return sorted(self._adj[vid])

    def degree(self, vid: int) -> int:
        return len(self._adj[vid])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def components(self) -> list[list[int]]:
        seen, comps = set(), []
        for start in self._adj:
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return sorted(comps)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def branching_vertices(self) -> list[int]:
        return [v for v in self.ids if self.degree(v) >= 3]

    def subgraph(self, ids: Iterable[int]) -> "DualGraph":
        keep = set(ids)
        return DualGraph(
            tuple(v for v in self.vertices if v.id in keep),
            frozenset(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    def without(self, ids: Iterable[int]) -> "DualGraph":
        drop = set(ids)
        return self.subgraph(v for v in self.ids if v not in drop)

    def relabel(self, offset: int = 0, prefix: str = "") -> "DualGraph":
        return DualGraph(
            tuple(Vertex(v.id + offset, v.weight,
                         None if v.label is None else prefix + v.label)
                  for v in self.vertices),
            frozenset((u + offset, w + offset) for u, w in self.edges),
        )

    def as_chain(self) -> LinearChain:
        """Negated weights along the path, starting from the smaller-id end."""
        if not self.vertices:
            return LinearChain()
        if not self.is_connected() or any(self.degree(v) > 2 for v in self.ids):
            raise ValueError("graph is not a linear chain")
        ends = [v for v in self.ids if self.degree(v) <= 1]
        order, prev, cur = [], None, min(ends)
        while cur is not None:
            order.append(cur)
            nxt = [w for w in self._adj[cur] if w != prev]
            prev, cur = cur, (nxt[0] if nxt else None)
        return LinearChain(-self.weight(v) for v in order)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        verts = []
        for v in self.vertices:
            item = {"id": v.id, "weight": v.weight}
            if v.label is not None:
                item["label"] = v.label
            verts.append(item)
        return {"vertices": verts, "edges": [list(e) for e in sorted(self.edges)]}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "DualGraph":
        verts = tuple(Vertex(int(v["id"]), int(v["weight"]), v.get("label"))
                      for v in data["vertices"])
        edges = []
        for e in data["edges"]:
            if len(e) != 2:
                raise ValueError(f"edge must have two endpoints: {e!r}")
            u, w = (int(x) for x in e)
            if _edge(u, w) in edges:
                raise ValueError(f"duplicate edge {e!r} (edge multiplicity must be <= 1)")
            edges.append(_edge(u, w))
        return cls(verts, frozenset(edges))

    @classmethod
    def from_json(cls, text: str) -> "DualGraph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        """Graphviz source; (-1)-curves are marked with ``*``."""
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            text = "*" if v.weight == -1 else str(v.weight)
            extra = f', xlabel="{v.label}"' if v.label else ""
            lines.append(f'  {v.id} [label="{text}"{extra}];')
        for u, w in sorted(self.edges):
            lines.append(f"  {u} -- {w};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def chain_graph(chain, start_id: int = 0, labels: Optional[Iterable[str]] = None) -> DualGraph:
    """Path graph whose weights are the negated entries of ``chain``."""
    chain = list(chain)
    labels = list(labels) if labels is not None else [None] * len(chain)
    verts = tuple(Vertex(start_id + i, -a, lab) for i, (a, lab) in enumerate(zip(chain, labels)))
    edges = frozenset((start_id + i, start_id + i + 1) for i in range(len(chain) - 1))
    return DualGraph(verts, edges)


# -- rewriting -------------------------------------------------------------

def blow_down(graph: DualGraph, v: int) -> DualGraph:
    """Contract the (-1)-vertex ``v``; its neighbours gain +1 weight each."""
    if v not in graph:
        raise KeyError(v)
    if graph.weight(v) != -1:
        raise WeightError(f"vertex {v} has weight {graph.weight(v)}, not -1")
    nbrs = graph.neighbors(v)
    if len(nbrs) > 2:
        raise DegreeError(f"vertex {v} meets {len(nbrs)} components; at most 2 allowed")
    if len(nbrs) == 2 and graph.adjacent(*nbrs):
        raise CycleError(f"contracting {v} would join already adjacent {nbrs[0]} and {nbrs[1]}")
    verts = tuple(Vertex(u.id, u.weight + 1 if u.id in nbrs else u.weight, u.label)
                  for u in graph.vertices if u.id != v)
    edges = {e for e in graph.edges if v not in e}
    if len(nbrs) == 2:
        edges.add(_edge(*nbrs))
    return DualGraph(verts, frozenset(edges))


def blow_up(graph: DualGraph, at, label: Optional[str] = None) -> tuple[DualGraph, int]:
    """Blow up a smooth point of vertex ``at`` (an id) or the node ``at`` (an edge).

    Returns the new graph and the id of the new (-1)-vertex, which is one more
    than the largest id present.
    """
    new = max(graph.ids, default=-1) + 1
    if isinstance(at, int):
        touched = (at,)
        if at not in graph:
            raise KeyError(at)
        edges = set(graph.edges) | {_edge(at, new)}
    else:
        u, w = at
        if not graph.adjacent(u, w):
            raise ValueError(f"({u},{w}) is not an edge")
        touched = (u, w)
        edges = (set(graph.edges) - {_edge(u, w)}) | {_edge(u, new), _edge(w, new)}
    verts = tuple(Vertex(x.id, x.weight - 1 if x.id in touched else x.weight, x.label)
                  for x in graph.vertices) + (Vertex(new, -1, label),)
    return DualGraph(verts, frozenset(edges)), new


@dataclass(frozen=True)
class ContractionStep:
    vertex: int
    kind: str
    neighbors: tuple[int, ...]

    @property
    def to_point(self) -> bool:
        """True when the contracted curve met nothing else (blow-up of a bare point)."""
        return not self.neighbors


@dataclass(frozen=True)
class ContractionTrace:
    """Blow-downs in the order performed.

    ``kind`` classifies the inverse blow-up: centre on a smooth point of the
    remaining divisor (sprouting) or on a node (subdivisional).  A blow-down of
    an isolated vertex is the blow-up of a point, which counts as subdivisional.
    """

    steps: tuple[ContractionStep, ...]
    result: DualGraph

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def blow_up_kinds(self) -> list[str]:
        return [s.kind for s in reversed(self.steps)]

    @property
    def sprouting_count(self) -> int:
        return sum(s.kind == SPROUTING for s in self.steps)

    def replay(self, graph: DualGraph) -> DualGraph:
        for s in self.steps:
            graph = blow_down(graph, s.vertex)
        return graph


def _eligible(graph: DualGraph, protect=()) -> list[int]:
    out = []
    for v in graph.vertices:
        if v.weight != -1 or v.id in protect:
            continue
        nbrs = graph.neighbors(v.id)
        if len(nbrs) > 2 or (len(nbrs) == 2 and graph.adjacent(*nbrs)):
            continue
        out.append(v.id)
    return out


Chooser = Callable[[list[int]], int]


def simulate_contraction(graph: DualGraph, *, stop_at: int = 0, protect=(),
                         choose: Optional[Chooser] = None) -> ContractionTrace:
    """Blow down (-1)-vertices until ``stop_at`` vertices remain or none is eligible.

    ``choose`` picks among the eligible ids (default: the smallest).  Vertices
    in ``protect`` are never contracted.  Never raises on getting stuck; check
    ``trace.result``.
    """
    choose = choose or min
    steps = []
    while len(graph) > stop_at:
        cands = _eligible(graph, protect)
        if not cands:
            break
        v = choose(cands)
        nbrs = tuple(graph.neighbors(v))
        kind = SPROUTING if len(nbrs) == 1 else SUBDIVISIONAL
        steps.append(ContractionStep(v, kind, nbrs))
        graph = blow_down(graph, v)
    return ContractionTrace(tuple(steps), graph)


def contract_to_point(graph: DualGraph, *, choose: Optional[Chooser] = None,
                      rng: Optional[random.Random] = None) -> ContractionTrace:
    """Contract an exceptional tree completely; raises :class:`ContractionStuck` otherwise.

    With ``rng`` the eligible vertex is drawn at random instead of taking the
    smallest id.
    """
    if not graph.vertices:
        raise ValueError("cannot contract the empty graph")
    if not graph.is_connected():
        raise ValueError("contract_to_point needs a connected tree")
    if rng is not None and choose is None:
        choose = rng.choice
    trace = simulate_contraction(graph, choose=choose)
    if trace.result.vertices:
        raise ContractionStuck(
            f"stuck with {len(trace.result)} vertices left and no contractible (-1)-vertex",
            trace.result)
    return trace


def _chain_with_curve(a, b) -> DualGraph:
    return chain_graph(tuple(a) + (1,) + tuple(b))


def shrink_chain(a, b, target: int) -> int:
    """Contract ``[a, 1, b]`` onto the first curve of ``a`` and return the sprouting count.

    The count read off the simulation is checked against the unique ``n`` with
    ``adjoint(a) == [b, n + 1, tw(target - 1)]``.
    """
    a, b = LinearChain(a), LinearChain(b)
    if not a.is_admissible():
        raise ValueError(f"a = {format_chain(a)} is not admissible")
    if b and not b.is_admissible():
        raise ValueError(f"b = {format_chain(b)} must be empty or admissible")
    if target < 1:
        raise ValueError("target must be a positive integer")
    trace = simulate_contraction(_chain_with_curve(a, b), stop_at=1, protect={0})
    if trace.result.ids != [0] or trace.result.weight(0) != -target:
        raise NotContractible(
            f"{format_chain(a + (1,) + b)} does not shrink to [{target}] "
            f"(simulation ended at {format_chain(trace.result.as_chain())})")
    n = trace.sprouting_count

    adj = adjoint(a)
    tail = tw(target - 1)
    k = len(b)
    head_ok = adj[:k] == b and len(adj) == k + 1 + len(tail) and adj[k + 1:] == tail
    if not head_ok or adj[k] != n + 1:
        raise AssertionError(
            f"simulation gives n={n} but adjoint({format_chain(a)}) = {format_chain(adj)} "
            f"does not have the form [b, n+1, tw({target - 1})]")
    return n


def chain_shrinks_to_zero(a, b) -> bool:
    """Whether ``[a, 1, b]`` blows down to a single 0-curve."""
    a, b = LinearChain(a), LinearChain(b)
    if not (a.is_admissible() and b.is_admissible()):
        raise ValueError("both chains must be admissible")
    trace = simulate_contraction(_chain_with_curve(a, b), stop_at=1)
    verdict = len(trace.result) == 1 and trace.result.vertices[0].weight == 0
    expected = a == adjoint(b)
    if verdict != expected:
        raise AssertionError(
            f"simulation ({verdict}) disagrees with adjoint test ({expected}) "
            f"for a={format_chain(a)}, b={format_chain(b)}")
    return verdict
