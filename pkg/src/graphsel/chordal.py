"""Chordality and decomposability machinery.

Maximum cardinality search, perfect sequences, junction forests, add-eligible
edge enumeration, and forbidden-path detection for mixed graphs. Everything
here is a pure function of an immutable graph and is safe for concurrent use.

A mixed graph is strongly decomposable when it is triangulated and contains no
path joining two non-adjacent discrete vertices through only continuous
vertices. ``mcs`` with ``discrete_first=True`` checks exactly this by numbering
every discrete vertex before any continuous one within the usual
maximum-cardinality greedy order.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from .errors import GraphError, NotDecomposableError


@dataclass(frozen=True)
class PerfectSequence:
    """Ordered cliques with histories, separators and residuals.

    ``separators[j]`` is the intersection of clique j with the union of the
    earlier cliques (empty for the first clique of each component);
    ``residuals[j]`` the remainder of clique j. All vertex sets are sorted
    1-based tuples.
    """

    cliques: tuple
    histories: tuple
    separators: tuple
    residuals: tuple

    def multiplicities(self):
        """Count how many times each distinct nonempty separator occurs."""
        out = {}
        for s in self.separators:
            if s:
                out[s] = out.get(s, 0) + 1
        return out

    def to_json_dict(self):
        return {
            "cliques": [list(c) for c in self.cliques],
            "histories": [list(h) for h in self.histories],
            "separators": [list(s) if s else None for s in self.separators],
            "residuals": [list(r) for r in self.residuals],
        }


@dataclass(frozen=True)
class JunctionTree:
    """Junction forest: clique nodes, tree edges (0-based clique indices), and
    the separator attached to each tree edge."""

    cliques: tuple
    tree_edges: tuple
    edge_separators: tuple


def mcs(g, root=1, discrete_first=False):
    """Maximum cardinality search returning a perfect numbering of the vertices.

    Returns the vertex order (1-based) when the graph is triangulated, or
    None when it is not. With ``discrete_first`` every discrete vertex is
    numbered before any continuous one (greedy by weight within each class),
    which succeeds precisely for strongly decomposable mixed graphs.

    Ties are broken by smallest vertex index; ``root`` is preferred as the
    first vertex when it is an eligible starting choice.

    Note: the numbering produced is of vertices (a perfect vertex numbering),
    from which the clique structure is derived.
    """
    if g.p == 0:
        return []
    if not (1 <= root <= g.p):
        raise GraphError(f"root {root} out of range 1..{g.p}")
    adj = g.adjacency()
    weight = [0] * (g.p + 1)
    numbered = set()
    order = []
    remaining = set(range(1, g.p + 1))
    while remaining:
        pool = remaining
        if discrete_first:
            disc = [v for v in remaining if g.is_discrete(v)]
            if disc:
                pool = disc
        best = None
        for v in pool:
            key = (weight[v], -v)
            if best is None or key > best[1]:
                best = (v, key)
        z = best[0]
        if not order and root in pool and weight[root] == weight[z]:
            z = root
        earlier = adj[z] & numbered
        for a, b in itertools.combinations(sorted(earlier), 2):
            if b not in adj[a]:
                return None
        order.append(z)
        numbered.add(z)
        remaining.discard(z)
        for y in adj[z]:
            if y in remaining:
                weight[y] += 1
    return order


def is_perfect_numbering(g, order):
    """Check that each vertex's earlier-numbered neighbours form a complete set."""
    if sorted(order) != list(range(1, g.p + 1)):
        return False
    adj = g.adjacency()
    seen = set()
    for z in order:
        earlier = adj[z] & seen
        for a, b in itertools.combinations(earlier, 2):
            if b not in adj[a]:
                return False
        seen.add(z)
    return True


def is_triangulated(g):
    return mcs(g) is not None


def is_strongly_decomposable(g):
    return mcs(g, discrete_first=True) is not None


def _cliques_in_order(g, order):
    """Maximal cliques discovered along a perfect numbering (discovery order)."""
    adj = g.adjacency()
    pos = {v: i for i, v in enumerate(order)}
    cand = []
    for v in order:
        earlier = {u for u in adj[v] if pos[u] < pos[v]}
        cand.append(frozenset(earlier | {v}))
    cliques = []
    for c in cand:
        if any(c < d for d in cand):
            continue
        if c not in cliques:
            cliques.append(c)
    return cliques


def perf_sets(g, mixed_check=False):
    """Perfect sequence of cliques with histories, separators and residuals.

    Returns None when the graph is not triangulated (or, with
    ``mixed_check``, not strongly decomposable). Isolated vertices appear as
    singleton cliques at the head of the sequence.
    """
    order = mcs(g, discrete_first=mixed_check)
    if order is None:
        return None
    cliques = _cliques_in_order(g, order)
    deg = {v: len(g.adjacency()[v]) for v in range(1, g.p + 1)}
    isolated = [c for c in cliques if len(c) == 1 and deg[next(iter(c))] == 0]
    isolated.sort(key=lambda c: next(iter(c)))
    rest = [c for c in cliques if c not in isolated]
    ordered = isolated + rest

    hist = set()
    cl, hi, se, re = [], [], [], []
    for c in ordered:
        s = c & hist
        hist |= c
        cl.append(tuple(sorted(c)))
        hi.append(tuple(sorted(hist)))
        se.append(tuple(sorted(s)))
        re.append(tuple(sorted(c - s)))
    return PerfectSequence(tuple(cl), tuple(hi), tuple(se), tuple(re))


def j_tree(g):
    """Junction forest over the cliques of a triangulated graph.

    Each clique after the first in its component is attached to the earliest
    preceding clique containing its separator. Returns None when the graph is
    not triangulated.
    """
    ps = perf_sets(g)
    if ps is None:
        return None
    edges = []
    seps = []
    for j, s in enumerate(ps.separators):
        if not s:
            continue
        sset = set(s)
        for i in range(j - 1, -1, -1):
            if sset <= set(ps.cliques[i]):
                edges.append((i, j))
                seps.append(s)
                break
        else:
            raise AssertionError("running intersection violated")
    return JunctionTree(ps.cliques, tuple(edges), tuple(seps))


# -- forbidden paths ------------------------------------------------------

def _continuous_regions(g):
    """Connected regions of the continuous subgraph and their discrete boundary.

    Returns (region id per vertex or None for discrete, list of boundary sets).
    """
    region = [None] * (g.p + 1)
    regions = []
    adj = g.adjacency()
    for v in range(1, g.p + 1):
        if g.is_discrete(v) or region[v] is not None:
            continue
        rid = len(regions)
        stack = [v]
        region[v] = rid
        members = []
        while stack:
            x = stack.pop()
            members.append(x)
            for y in adj[x]:
                if not g.is_discrete(y) and region[y] is None:
                    region[y] = rid
                    stack.append(y)
        boundary = set()
        for x in members:
            boundary.update(d for d in adj[x] if g.is_discrete(d))
        regions.append(boundary)
    return region, regions


def has_forbidden_path(g):
    """True when two non-adjacent discrete vertices are joined through
    continuous vertices only."""
    region, boundaries = _continuous_regions(g)
    adj = g.adjacency()
    for boundary in boundaries:
        for d1, d2 in itertools.combinations(sorted(boundary), 2):
            if d2 not in adj[d1]:
                return True
    return False


# -- add-eligible edges ----------------------------------------------------

def find_ed(g, mixed=False):
    """All non-edges whose addition keeps the graph triangulated.

    With ``mixed=True`` edges that would create a forbidden path are excluded,
    so the output preserves strong decomposability. Edges joining different
    connected components are always triangularity-safe and are included
    (subject to the mixed filter). Raises NotDecomposableError when the input
    graph is not itself (strongly) decomposable.
    """
    return [e for e, _ in find_ed_certified(g, mixed=mixed)]


def find_ed_certified(g, mixed=False):
    """Add-eligible edges with their certificates.

    Returns a sorted list of ((u, v), separator) pairs where ``separator`` is
    the vertex set S such that S + {u, v} is the new clique created by the
    addition. Enumeration walks the junction forest: cliques C1 and C2 can be
    made adjacent in some junction tree exactly when their intersection equals
    a separator occurring on the path between them, and every such pair
    contributes its (u, v) candidates.
    """
    ps = perf_sets(g, mixed_check=mixed)
    if ps is None:
        kind = "strongly decomposable" if mixed else "triangulated"
        raise NotDecomposableError(f"find_ed requires a {kind} graph")
    jt = j_tree(g)
    cliques = [set(c) for c in jt.cliques]
    k = len(cliques)
    jt_adj = defaultdict(list)
    for idx, (a, b) in enumerate(jt.tree_edges):
        jt_adj[a].append((b, idx))
        jt_adj[b].append((a, idx))

    edge_set = g.edge_set()
    found = {}

    classes = defaultdict(list)
    for idx, s in enumerate(jt.edge_separators):
        classes[s].append(idx)

    for s, cut_idx in classes.items():
        cut = set(cut_idx)
        comp = [-1] * k
        c = 0
        for start in range(k):
            if comp[start] >= 0:
                continue
            comp[start] = c
            stack = [start]
            while stack:
                x = stack.pop()
                for y, eidx in jt_adj[x]:
                    if eidx in cut or comp[y] >= 0:
                        continue
                    comp[y] = c
                    stack.append(y)
            c += 1
        sset = set(s)
        members = [i for i in range(k) if sset <= cliques[i]]
        for i1, i2 in itertools.combinations(members, 2):
            if comp[i1] == comp[i2]:
                continue
            for u in cliques[i1] - sset:
                for v in cliques[i2] - sset:
                    e = (u, v) if u < v else (v, u)
                    if e not in edge_set and e not in found:
                        found[e] = s

    # vertices in different components: always triangularity-safe, S = {}
    comp_of = _component_ids(g)
    for u in range(1, g.p + 1):
        for v in range(u + 1, g.p + 1):
            if comp_of[u] != comp_of[v] and (u, v) not in edge_set:
                found.setdefault((u, v), ())

    if mixed:
        found = _filter_forbidden(g, found)
    return sorted(found.items())


def _component_ids(g):
    ids = {}
    adj = g.adjacency()
    cid = 0
    for v in range(1, g.p + 1):
        if v in ids:
            continue
        cid += 1
        stack = [v]
        ids[v] = cid
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in ids:
                    ids[y] = cid
                    stack.append(y)
    return ids


def _filter_forbidden(g, found):
    """Drop candidates that would create a forbidden path.

    Adding (u,v) creates one exactly when a discrete vertex d1 reaches u
    through continuous vertices, d2 similarly reaches v, and d1, d2 are
    distinct and non-adjacent (the new edge itself does not count).
    """
    region, boundaries = _continuous_regions(g)
    adj = g.adjacency()

    def dset(w):
        if g.is_discrete(w):
            return {w}
        return boundaries[region[w]]

    out = {}
    for (u, v), s in found.items():
        du, dv = dset(u), dset(v)
        forbidden = False
        for d1 in du:
            for d2 in dv:
                if d1 == d2 or {d1, d2} == {u, v}:
                    continue
                if d2 not in adj[d1]:
                    forbidden = True
                    break
            if forbidden:
                break
        if not forbidden:
            out[(u, v)] = s
    return out
