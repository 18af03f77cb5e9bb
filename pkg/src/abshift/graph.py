"""Deterministic labeled graph whose walks from [0,0] spell the language.

Vertices are pairs [j, k] of suffix statistics. From [j, k] the admitted
labels are the digits c with a_{j+1} <= c <= b_{k+1}; the target keeps
whichever boundary match the new digit extends:

    c = a_{j+1} = b_{k+1}  ->  [j+1, k+1]
    c = a_{j+1} < b_{k+1}  ->  [j+1, 0]
    c = b_{k+1} > a_{j+1}  ->  [0, k+1]
    a_{j+1} < c < b_{k+1}  ->  [0, 0]

At most one edge per label leaves a vertex, so the graph is deterministic
by construction.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .errors import DomainError
from .expansion import Params, Word, boundary

Vertex = tuple[int, int]

ROOT: Vertex = (0, 0)


@dataclass(frozen=True)
class LabeledGraph:
    depth: int
    vertices: frozenset
    edges: dict = field(hash=False)

    def sorted_vertices(self) -> list[Vertex]:
        return sorted(self.vertices)


def out_edges(p: Params, v: Vertex) -> dict[int, Vertex]:
    """Out-edges of one vertex, computed straight from the boundary digits."""
    j, k = v
    bd = boundary(p)
    lo = bd.a_at(j + 1)
    hi = bd.b_at(k + 1)
    edges: dict[int, Vertex] = {}
    for c in range(lo, hi + 1):
        if c == lo and c == hi:
            edges[c] = (j + 1, k + 1)
        elif c == lo:
            edges[c] = (j + 1, 0)
        elif c == hi:
            edges[c] = (0, k + 1)
        else:
            edges[c] = ROOT
    return edges


def build(p: Params, depth: int) -> LabeledGraph:
    """BFS closure of [0,0]: vertices within ``depth`` steps, edges from
    vertices strictly inside, so every stored walk stays within depth.

    >>> g = build(Params.make("2/7", "7/2"), 0)
    >>> (sorted(g.vertices), g.edges)
    ([(0, 0)], {})
    """
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    vertices = {ROOT}
    edges: dict[Vertex, dict[int, Vertex]] = {}
    frontier = [ROOT]
    for _ in range(depth):
        if not frontier:
            break  # closure reached before the depth cap
        nxt = []
        for v in frontier:
            out = out_edges(p, v)
            edges[v] = out
            for tgt in sorted(set(out.values())):
                if tgt not in vertices:
                    vertices.add(tgt)
                    nxt.append(tgt)
        frontier = nxt
    return LabeledGraph(depth=depth, vertices=frozenset(vertices), edges=edges)


_SHARED: dict = {}
_SHARED_LOCK = threading.Lock()


def shared_graph(p: Params, depth: int) -> LabeledGraph:
    """A cached graph of depth >= the request, reused across callers."""
    key = (p.alpha, p.beta)
    with _SHARED_LOCK:
        g = _SHARED.get(key)
        if g is None or g.depth < depth:
            g = build(p, max(depth, 2 * (g.depth if g else 8)))
            _SHARED[key] = g
        return g


def walk(g: LabeledGraph, w: Word) -> list[Vertex] | None:
    """Vertex path of w from the root, or None when some label is missing.

    >>> from .expansion import Params
    >>> g = build(Params.make("2/7", "7/2"), 4)
    >>> walk(g, (3, 3))
    [(0, 0), (0, 1), (0, 2)]
    >>> walk(g, (3, 3, 3)) is None
    True
    """
    if len(w) > g.depth:
        raise DomainError(f"word of length {len(w)} exceeds graph depth {g.depth}")
    path = [ROOT]
    v = ROOT
    for c in w:
        out = g.edges.get(v)
        if out is None:
            return None
        v = out.get(c)
        if v is None:
            return None
        path.append(v)
    return path


def accepts(g: LabeledGraph, w: Word) -> bool:
    """Whether the graph accepts w; agrees with language.is_admissible."""
    return walk(g, w) is not None


def export_dot(g: LabeledGraph) -> str:
    """Deterministic DOT text: vertices then edges, both in sorted order."""
    lines = ["digraph follower {", "  rankdir=LR;"]
    for j, k in g.sorted_vertices():
        lines.append(f'  "[{j},{k}]";')
    for (j, k) in sorted(g.edges):
        out = g.edges[(j, k)]
        for c in sorted(out):
            tj, tk = out[c]
            lines.append(f'  "[{j},{k}]" -> "[{tj},{tk}]" [label="{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def stats(g: LabeledGraph) -> dict:
    """Vertex/edge counts and the out-degree histogram of interior vertices."""
    hist: dict[int, int] = {}
    n_edges = 0
    for v in g.edges:
        d = len(g.edges[v])
        n_edges += d
        hist[d] = hist.get(d, 0) + 1
    return {
        "depth": g.depth,
        "vertices": len(g.vertices),
        "edges": n_edges,
        "out_degree_histogram": {str(k): hist[k] for k in sorted(hist)},
    }
