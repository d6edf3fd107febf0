"""Labeled-graph formulation of the induction as a win-lose system.

Each edge carries a unipotent elementary matrix; the dynamics follows
the edge whose label is the strict minimum of the current simplex point
over the out-labels. The six-vertex graph below reproduces the
renormalization as the first return to its two white vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple

from .exact import Mat3, Vec3, inverse_unimodular, mat_mul, mat_vec, normalize_simplex


@dataclass(frozen=True)
class Edge:
    src: Hashable
    dst: Hashable
    label: Hashable


class SimplicialGraph:
    def __init__(self, vertices: Sequence, edges: Sequence[Edge]):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.alphabet = tuple(sorted({e.label for e in self.edges}))
        self._out: Dict[Hashable, List[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.src not in self._out or e.dst not in self._out:
                raise ValueError(f"edge {e} references unknown vertex")
            self._out[e.src].append(e)
        for v, out in self._out.items():
            labels = [e.label for e in out]
            if len(labels) != len(set(labels)):
                raise ValueError(f"out-labels at vertex {v} are not distinct")

    def out_edges(self, v) -> Tuple[Edge, ...]:
        return tuple(self._out[v])

    def out_labels(self, v) -> Tuple:
        return tuple(e.label for e in self._out[v])

    def to_json(self) -> str:
        return json.dumps(
            {
                "vertices": list(self.vertices),
                "edges": [
                    {"src": e.src, "dst": e.dst, "label": e.label}
                    for e in self.edges
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "SimplicialGraph":
        data = json.loads(text)
        return cls(
            data["vertices"],
            [Edge(e["src"], e["dst"], e["label"]) for e in data["edges"]],
        )


def edge_matrix(g: SimplicialGraph, e: Edge) -> Mat3:
    """Identity plus E_{alpha, l(e)} for each other out-label alpha at src."""
    if len(g.alphabet) != 3:
        raise ValueError("edge matrices are 3x3; alphabet must have 3 letters")
    idx = {label: i for i, label in enumerate(g.alphabet)}
    col = idx[e.label]
    m = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    for label in g.out_labels(e.src):
        if label != e.label:
            m[idx[label]][col] += 1
    return tuple(tuple(row) for row in m)


@dataclass(frozen=True)
class WinLoseState:
    vertex: Hashable
    point: Vec3


class TieError(ValueError):
    """The point does not lie in the interior of any atom."""


def win_lose_step(g: SimplicialGraph, s: WinLoseState) -> Tuple[WinLoseState, Edge]:
    """Move along the edge whose label strictly minimizes the point.

    Raises TieError on an exact tie among compared coordinates and
    ValueError at a vertex with no outgoing edges.
    """
    out = g.out_edges(s.vertex)
    if not out:
        raise ValueError(f"vertex {s.vertex} has no outgoing edges")
    idx = {label: i for i, label in enumerate(g.alphabet)}
    coords = [(s.point[idx[e.label]], e) for e in out]
    values = [v for v, _ in coords]
    lo = min(values)
    if values.count(lo) > 1:
        raise TieError(f"tied minimum at vertex {s.vertex}: {s.point}")
    edge = next(e for v, e in coords if v == lo)
    inv = inverse_unimodular(edge_matrix(g, edge))
    point = normalize_simplex(mat_vec(inv, s.point))
    return WinLoseState(edge.dst, point), edge


def arc_graph() -> SimplicialGraph:
    """The six-vertex graph of the induction; vertex '22' is the hole."""
    edges = [
        Edge("11", "13", 1),
        Edge("13", "11", 2),
        Edge("11", "21", 3),
        Edge("13", "23", 3),
        Edge("21", "11", 2),
        Edge("23", "13", 1),
        Edge("21", "22", 1),
        Edge("23", "22", 2),
    ]
    return SimplicialGraph(["11", "13", "21", "22", "23"], edges)


WHITE_VERTICES = ("11", "13")


def first_return_products(
    g: SimplicialGraph, start, targets: Sequence
) -> List[Tuple[Tuple[Edge, ...], Mat3]]:
    """All edge paths from start back to a target vertex, avoiding targets
    in between, with their left-to-right matrix products."""
    results = []

    def walk(vertex, path, prod):
        for e in g.out_edges(vertex):
            m = mat_mul(prod, edge_matrix(g, e))
            if e.dst in targets:
                results.append((tuple(path) + (e,), m))
            elif g.out_edges(e.dst):
                walk(e.dst, path + [e], m)

    walk(start, [], ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    return results


def strongly_connected_components(
    vertices: Sequence, succ: Dict
) -> List[FrozenSet]:
    """Tarjan's algorithm, iterative to avoid recursion limits."""
    index: Dict[Hashable, int] = {}
    low: Dict[Hashable, int] = {}
    on_stack: Dict[Hashable, bool] = {}
    stack: List = []
    components: List[FrozenSet] = []
    counter = [0]

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                elif on_stack.get(w):
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.add(w)
                    if w == v:
                        break
                components.append(frozenset(comp))
    return components


def _restricted_out_edges(g: SimplicialGraph, labels: FrozenSet) -> Dict:
    out = {}
    for v in g.vertices:
        edges = g.out_edges(v)
        labeled = [e for e in edges if e.label in labels]
        out[v] = labeled if labeled else list(edges)
    return out


@dataclass(frozen=True)
class NondegeneracyWitness:
    labels: FrozenSet
    vertex: Hashable
    component: FrozenSet


def check_strong_nondegeneracy_cond2(
    g: SimplicialGraph,
) -> Tuple[bool, Optional[NondegeneracyWitness]]:
    """Combinatorial escape condition over every proper label subset.

    For each nonempty proper subset L of the alphabet, build the subgraph
    whose out-edges are restricted to L where available; every vertex of
    each strongly connected component must either see at most one
    out-label in L or admit an L-labeled path (in the full graph) leaving
    its component. Returns (ok, witness-of-failure).
    """
    alphabet = set(g.alphabet)
    subsets = []
    items = sorted(alphabet)
    for mask in range(1, 2 ** len(items) - 1):
        subsets.append(frozenset(l for i, l in enumerate(items) if mask >> i & 1))

    for labels in subsets:
        restricted = _restricted_out_edges(g, labels)
        succ = {v: [e.dst for e in restricted[v]] for v in g.vertices}
        for comp in strongly_connected_components(g.vertices, succ):
            for v in comp:
                if len(set(g.out_labels(v)) & labels) <= 1:
                    continue
                if not _escapes(g, v, labels, comp):
                    return False, NondegeneracyWitness(labels, v, comp)
    return True, None


def _escapes(g: SimplicialGraph, start, labels: FrozenSet, comp: FrozenSet) -> bool:
    """Is there a path from start, with all labels in `labels`, leaving comp?"""
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for e in g.out_edges(v):
            if e.label not in labels:
                continue
            if e.dst not in comp:
                return True
            if e.dst not in seen:
                seen.add(e.dst)
                frontier.append(e.dst)
    return False
