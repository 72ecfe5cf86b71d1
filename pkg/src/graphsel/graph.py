"""Undirected graph model: edge list, vertex metadata, search provenance.

Vertices are numbered 1..p in every public interface. All operations here are
pure reads of an immutable ``GraphModel``; construction returns a new value,
so concurrent use needs no locking.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import GraphError, VertexLimitError

MAX_VERTICES = 65_000


def _canonical_edges(edges, p):
    """Normalize to (min,max) tuples; reject self-loops, duplicates, bad indices."""
    out = []
    seen = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise GraphError(f"self-loop ({u},{v}) is not allowed")
        if not (1 <= u <= p and 1 <= v <= p):
            raise GraphError(f"edge ({u},{v}) out of range for p={p}")
        if u > v:
            u, v = v, u
        if (u, v) in seen:
            raise GraphError(f"duplicate edge ({u},{v})")
        seen.add((u, v))
        out.append((u, v))
    return out


@dataclass(eq=False)
class GraphModel:
    """Edge list plus vertex metadata and search provenance.

    Attributes
    ----------
    edges : list of (u, v)
        Canonical 1-based pairs with u < v, in search/insertion order.
    p : int
        Number of vertices.
    num_cat : tuple of int
        Per-vertex level count; 0 marks a continuous variable, >= 2 a
        discrete one.
    homog : bool
        Homogeneous covariance across discrete cells (mixed models only).
    vert_names : tuple of str
        Vertex labels; defaults to "1".."p".
    stat_forest, stat_stepw : str or None
        Measure used by the forest / stepwise search ("LR", "AIC", "BIC",
        "USER"), when that search contributed edges.
    stat_user : str or None
        Label of a user-supplied measure, if one was used.
    stat_seq : list of float
        Per-edge statistic recorded by the search (NaN when unknown).
    num_p : list of float
        Per-edge parameter-count contribution (NaN when unknown).
    range_forest, range_stepw : (int, int) or None
        1-based inclusive row ranges of edges contributed by each search.
    """

    edges: list = field(default_factory=list)
    p: int = 0
    num_cat: tuple = ()
    homog: bool = True
    vert_names: tuple = ()
    stat_forest: str | None = None
    stat_stepw: str | None = None
    stat_user: str | None = None
    stat_seq: list = field(default_factory=list)
    num_p: list = field(default_factory=list)
    range_forest: tuple | None = None
    range_stepw: tuple | None = None
    _adj: dict | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.p = int(self.p)
        if self.p < 0:
            raise GraphError("p must be nonnegative")
        if self.p > MAX_VERTICES:
            raise VertexLimitError(
                f"p={self.p} exceeds the supported limit of {MAX_VERTICES} vertices")
        if not self.num_cat:
            self.num_cat = (0,) * self.p
        self.num_cat = tuple(int(k) for k in self.num_cat)
        if len(self.num_cat) != self.p:
            raise GraphError("num_cat length must equal p")
        for k in self.num_cat:
            if k != 0 and k < 2:
                raise GraphError(f"num_cat entries must be 0 or >= 2, got {k}")
        if not self.vert_names:
            self.vert_names = tuple(str(i) for i in range(1, self.p + 1))
        self.vert_names = tuple(str(s) for s in self.vert_names)
        if len(self.vert_names) != self.p:
            raise GraphError("vert_names length must equal p")
        self.edges = _canonical_edges(self.edges, self.p)
        m = len(self.edges)
        if not self.stat_seq:
            self.stat_seq = [math.nan] * m
        if not self.num_p:
            self.num_p = [math.nan] * m
        self.stat_seq = [float(x) for x in self.stat_seq]
        self.num_p = [float(x) for x in self.num_p]
        if len(self.stat_seq) != m or len(self.num_p) != m:
            raise GraphError("stat_seq and num_p must align with edges")
        for name, rng in (("range_forest", self.range_forest),
                          ("range_stepw", self.range_stepw)):
            if rng is not None:
                a, b = int(rng[0]), int(rng[1])
                if not (1 <= a <= b <= m):
                    raise GraphError(f"{name}=({a},{b}) out of range for {m} edges")
                setattr(self, name, (a, b))
        if self.range_forest and self.range_stepw:
            fa, fb = self.range_forest
            sa, sb = self.range_stepw
            if fb >= sa:
                raise GraphError("range_forest and range_stepw must be disjoint, "
                                 "forest edges first")

    # -- derived structure ------------------------------------------------

    def adjacency(self):
        """Vertex -> set of neighbours (1-based). Built lazily, cached."""
        if self._adj is None:
            adj = {v: set() for v in range(1, self.p + 1)}
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = adj
        return self._adj

    def edge_set(self):
        return set(self.edges)

    @property
    def n_edges(self):
        return len(self.edges)

    def is_discrete(self, v):
        return self.num_cat[v - 1] > 0

    def kind(self):
        """Model kind derived from num_cat: empty/continuous/discrete/mixed."""
        if self.p == 0:
            return "empty"
        n_disc = sum(1 for k in self.num_cat if k > 0)
        if n_disc == 0:
            return "continuous"
        if n_disc == self.p:
            return "discrete"
        return "mixed"

    def with_edges(self, edges, **updates):
        """New model with a different edge list (provenance reset unless given)."""
        fields = dict(edges=list(edges), stat_seq=[], num_p=[],
                      range_forest=None, range_stepw=None, _adj=None)
        fields.update(updates)
        return replace(self, **fields)


def new_graph(edges=None, p=0, num_cat=None, homog=True, vert_names=None):
    """Construct a validated GraphModel; ``edges=None`` gives the empty model.

    The null model (p=0, no edges) is permitted.
    """
    return GraphModel(edges=list(edges) if edges else [], p=p,
                      num_cat=tuple(num_cat) if num_cat else (),
                      homog=homog,
                      vert_names=tuple(vert_names) if vert_names else ())


def _check_vertex(g, v):
    if not (1 <= v <= g.p):
        raise GraphError(f"vertex {v} out of range 1..{g.p}")


def adj_matrix(g):
    """p x p boolean symmetric adjacency matrix with a false diagonal."""
    m = np.zeros((g.p, g.p), dtype=bool)
    for u, v in g.edges:
        m[u - 1, v - 1] = True
        m[v - 1, u - 1] = True
    return m


def degree(g, vs=None):
    """Map each vertex in ``vs`` (default: all) to its number of incident edges."""
    adj = g.adjacency()
    if vs is None:
        vs = range(1, g.p + 1)
    out = {}
    for v in vs:
        _check_vertex(g, v)
        out[v] = len(adj[v])
    return out


def neighbours(g, v):
    """Vertices directly connected to v, ascending."""
    _check_vertex(g, v)
    return sorted(g.adjacency()[v])


def dfs_reachable(g, v):
    """The connected component of v, including v itself."""
    _check_vertex(g, v)
    adj = g.adjacency()
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def short_path(g, v=None):
    """BFS distances with unit edge lengths; unreachable pairs are +inf.

    With a vertex, returns a length-p vector of distances from v; without,
    the full p x p matrix.
    """
    if v is not None:
        _check_vertex(g, v)
        return _bfs(g, v)
    out = np.full((g.p, g.p), np.inf)
    for s in range(1, g.p + 1):
        out[s - 1] = _bfs(g, s)
    return out


def _bfs(g, source):
    adj = g.adjacency()
    dist = np.full(g.p, np.inf)
    dist[source - 1] = 0.0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if not np.isfinite(dist[y - 1]):
                dist[y - 1] = dist[x - 1] + 1
                queue.append(y)
    return dist


def neighbourhood(g, v, radius):
    """Vertices within the given distance of v as (vertex, distance) pairs.

    Includes v itself at distance 0; sorted by distance then vertex.
    """
    dist = short_path(g, v)
    out = [(i + 1, int(d)) for i, d in enumerate(dist) if d <= radius]
    out.sort(key=lambda t: (t[1], t[0]))
    return out


def subgraph(g, vs):
    """Induced subgraph on ``vs``, renumbered 1..len(vs) in the given order.

    Vertex metadata is carried over; stat_seq/num_p entries of surviving
    edges are retained. Provenance ranges do not survive the selection.
    """
    vs = [int(v) for v in vs]
    for v in vs:
        _check_vertex(g, v)
    if len(set(vs)) != len(vs):
        raise GraphError("duplicate vertices in subgraph selection")
    remap = {v: i + 1 for i, v in enumerate(vs)}
    edges, stat_seq, num_p = [], [], []
    for i, (u, v) in enumerate(g.edges):
        if u in remap and v in remap:
            a, b = remap[u], remap[v]
            edges.append((min(a, b), max(a, b)))
            stat_seq.append(g.stat_seq[i])
            num_p.append(g.num_p[i])
    return GraphModel(edges=edges, p=len(vs),
                      num_cat=tuple(g.num_cat[v - 1] for v in vs),
                      homog=g.homog,
                      vert_names=tuple(g.vert_names[v - 1] for v in vs),
                      stat_forest=g.stat_forest, stat_stepw=g.stat_stepw,
                      stat_user=g.stat_user,
                      stat_seq=stat_seq, num_p=num_p)


def connected_components(g):
    """Per-vertex component ids 1..k, ordered by each component's smallest vertex."""
    ids = [0] * g.p
    cid = 0
    for v in range(1, g.p + 1):
        if ids[v - 1]:
            continue
        cid += 1
        for x in dfs_reachable(g, v):
            ids[x - 1] = cid
    return ids


def is_forest(g):
    """True when every component satisfies |edges| = |vertices| - 1."""
    ids = connected_components(g)
    nv = {}
    ne = {}
    for v in range(1, g.p + 1):
        nv[ids[v - 1]] = nv.get(ids[v - 1], 0) + 1
    for u, v in g.edges:
        ne[ids[u - 1]] = ne.get(ids[u - 1], 0) + 1
    return all(ne.get(c, 0) == nv[c] - 1 for c in nv)


def summary(g):
    """Structured text report of the model: size, kind, measures, edge ranges."""
    lines = [
        _kv("Number of edges", g.n_edges),
        _kv("Number of vertices", g.p),
        _kv("Model", g.kind()),
    ]
    if g.stat_forest:
        lines.append(_kv("Statistic (minForest)", g.stat_forest))
    if g.stat_stepw:
        lines.append(_kv("Statistic (stepw)", g.stat_stepw))
    if g.range_forest:
        a, b = g.range_forest
        lines.append(_kv("Edges from minForest", f"{a}...{b}"))
    if g.range_stepw:
        a, b = g.range_stepw
        lines.append(_kv("Edges from stepw", f"{a}...{b}"))
    return "\n".join(lines)


def _kv(label, value):
    return f"{label:<21} = {value}"
