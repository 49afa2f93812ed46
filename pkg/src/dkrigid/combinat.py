"""Combinatorial rigidity: sparsity, connectivity, matroid rank oracles."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from .core import DEFAULT_SAMPLES, Edge, Graph, Verdict, generic_samples
from .exactla import independent_rows, rank
from .matrices import dk_rank_target, rigid_rank, rigidity_matrix

EdgeSubset = frozenset[int]

EXHAUSTIVE_LIMIT = 10


# -- sparsity --------------------------------------------------------------------

class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


class PebbleGame:
    """(2,3) pebble game on ``n`` vertices.

    Each vertex starts with two pebbles; an edge is accepted when four
    pebbles can be gathered on its endpoints.
    """

    def __init__(self, n: int) -> None:
        self.n = n
        self.pebbles = [2] * n
        self.out: list[list[int]] = [[] for _ in range(n)]

    def _gather(self, u: int, blocked: int) -> bool:
        parent = {u: None, blocked: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self.out[x]:
                if y in parent:
                    continue
                parent[y] = x
                if self.pebbles[y] > 0:
                    # reverse the path y <- ... <- u
                    self.pebbles[y] -= 1
                    while parent[y] is not None:
                        x = parent[y]
                        self.out[x].remove(y)
                        self.out[y].append(x)
                        y = x
                    self.pebbles[u] += 1
                    return True
                queue.append(y)
        return False

    def reach(self, sources: Iterable[int]) -> set[int]:
        seen = set(sources)
        stack = list(seen)
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def try_add(self, u: int, v: int) -> bool:
        while self.pebbles[u] < 2 and self._gather(u, v):
            pass
        while self.pebbles[v] < 2 and self._gather(v, u):
            pass
        if self.pebbles[u] + self.pebbles[v] < 4:
            return False
        self.pebbles[u] -= 1
        self.out[u].append(v)
        return True


def laman_independent(graph: Graph, indices: Optional[Iterable[int]] = None) -> tuple[list[int], Optional[set[int]]]:
    """Greedy (2,3)-independent subset of the given edges.

    Returns the accepted edge indices and, for the first rejected edge, the
    vertex set of a subgraph violating (2,3)-sparsity (``None`` if none was
    rejected).
    """
    game = PebbleGame(graph.n)
    accepted, violation = [], None
    order = range(graph.m) if indices is None else sorted(indices)
    for i in order:
        u, v = graph.edges[i]
        if game.try_add(u, v):
            accepted.append(i)
        elif violation is None:
            violation = game.reach([u, v])
    return accepted, violation


def forest_independent(graph: Graph, indices: Optional[Iterable[int]] = None) -> tuple[list[int], Optional[set[int]]]:
    uf = _UnionFind(graph.n)
    accepted, violation = [], None
    order = range(graph.m) if indices is None else sorted(indices)
    for i in order:
        u, v = graph.edges[i]
        if uf.union(u, v):
            accepted.append(i)
        elif violation is None:
            root = uf.find(u)
            violation = {w for w in range(graph.n) if uf.find(w) == root}
    return accepted, violation


def _induced_edge_count(graph: Graph, vertices: set[int]) -> int:
    return sum(1 for u, v in graph.edges if u in vertices and v in vertices)


def is_sparse_tight(g: Graph, a: int, b: int) -> Verdict:
    """Decide (a,b)-sparsity: ``|E'| <= a|V'| - b`` for every subgraph with an edge.

    ``answer`` is sparsity; the witness also reports tightness and, when not
    sparse, the vertex set of a violating subgraph.
    """
    if (a, b) == (2, 3):
        accepted, bad = laman_independent(g)
        method = "pebble-game"
    elif (a, b) == (1, 1):
        accepted, bad = forest_independent(g)
        method = "spanning-forest"
    elif g.n <= EXHAUSTIVE_LIMIT:
        bad = None
        for size in range(2, g.n + 1):
            for sub in combinations(range(g.n), size):
                s = set(sub)
                if _induced_edge_count(g, s) > a * size - b:
                    bad = s
                    break
            if bad is not None:
                break
        method = "exhaustive"
    else:
        raise ValueError(f"({a},{b})-sparsity only supported exhaustively for n <= {EXHAUSTIVE_LIMIT}")
    sparse = bad is None
    tight = sparse and g.m == a * g.n - b
    witness = {"sparse": sparse, "tight": tight, "edges": g.m, "bound": a * g.n - b}
    if bad is not None:
        witness["violating_vertices"] = sorted(bad)
        witness["violating_edges"] = _induced_edge_count(g, bad)
    return Verdict(sparse, method, witness)


# -- rigidity matroid oracles ------------------------------------------------------

def matroid_rank(g: Graph, f: Iterable[int], m: int, seed: int = 0,
                 samples: int = DEFAULT_SAMPLES) -> int:
    """Rank of edge set ``f`` in the generic m-dimensional rigidity matroid.

    Computed as the max rank of the corresponding rigidity-matrix rows over
    random integer realizations.
    """
    if m < 1:
        raise ValueError("dimension must be at least 1")
    idx = sorted(set(f))
    if not idx:
        return 0
    return max(
        rank(rigidity_matrix(p).select_rows(idx))
        for p in generic_samples(g, m, seed, samples)
    )


def combinatorial_matroid_rank(g: Graph, f: Iterable[int], m: int) -> int:
    """Same as :func:`matroid_rank` for ``m <= 2``, via forests or the pebble game."""
    if m == 1:
        return len(forest_independent(g, f)[0])
    if m == 2:
        return len(laman_independent(g, f)[0])
    raise ValueError("combinatorial rank only for m <= 2")


def union_independent(g: Graph, f: Iterable[int], m: int, k: int, seed: int = 0,
                      samples: int = DEFAULT_SAMPLES) -> bool:
    """Independence of ``f`` in the union of the m-rigidity matroid with ``U_k``."""
    f = set(f)
    if k < 0:
        raise ValueError("k must be non-negative")
    if len(f) <= k:
        return True
    return matroid_rank(g, f, m, seed, samples) >= len(f) - k


def _generic_basis(g: Graph, m: int, seed: int, samples: int) -> list[int]:
    best: list[int] = []
    for p in generic_samples(g, m, seed, samples):
        rows = list(independent_rows(rigidity_matrix(p))) if g.m else []
        if len(rows) > len(best):
            best = rows
    return best


def spanning_rigid_subgraph_exists(g: Graph, m: int, seed: int = 0,
                                   samples: int = DEFAULT_SAMPLES) -> Verdict:
    """Whether ``g`` is generically m-rigid; witness is a spanning independent edge set."""
    if m < 1:
        raise ValueError("dimension must be at least 1")
    target = rigid_rank(g.n, m)
    if m == 1:
        basis = forest_independent(g)[0]
        method = "combinatorial"
    elif m == 2:
        basis = laman_independent(g)[0]
        method = "combinatorial"
    else:
        basis = _generic_basis(g, m, seed, samples)
        method = "generic-rank"
    return Verdict(len(basis) == target, method,
                   {"basis": basis, "rank": len(basis), "target": target})


def is_dk_rigid_combinatorial(g: Graph, d: int, k: int, seed: int = 0,
                              samples: int = DEFAULT_SAMPLES) -> Verdict:
    """Complete, or a spanning (d-k)-rigid subgraph plus enough edges.

    On success the witness carries a minimally (d,k)-rigid spanning edge set:
    a rigidity basis plus ``k`` further edges.
    """
    if not 1 <= k < d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={d}")
    if g.is_complete():
        return Verdict(True, "complete-clause", {"complete": True})
    m = d - k
    spanning = spanning_rigid_subgraph_exists(g, m, seed, samples)
    needed = dk_rank_target(g.n, d, k)
    enough = g.m >= needed
    witness = {
        "spanning_rigid": spanning.answer,
        "spanning_method": spanning.method,
        "edges": g.m,
        "required_edges": needed,
    }
    answer = spanning.answer and enough
    if answer:
        basis = spanning.witness["basis"]
        rest = [i for i in range(g.m) if i not in set(basis)]
        witness["minimal_subgraph"] = sorted(basis + rest[:k])
        witness["rigid_subgraph"] = basis
    return Verdict(answer, "combinatorial", witness)


# -- connectivity ------------------------------------------------------------------

def _local_connectivity(g: Graph, s: int, t: int, limit: int) -> tuple[int, list[int]]:
    """Max number of internally disjoint s-t paths (capped at ``limit``) and a
    minimum separator when the cap was not reached."""
    n = g.n
    # v_in = 2v, v_out = 2v + 1
    cap: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            adj[a].append(b)
            adj[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    big = n + 1
    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges:
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)
    src, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < limit:
        parent = {src: None}
        queue = deque([src])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in adj[x]:
                if y not in parent and cap[(x, y)] > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while parent[y] is not None:
            x = parent[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1
    if flow >= limit:
        return flow, []
    reach = {src}
    stack = [src]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in reach and cap[(x, y)] > 0:
                reach.add(y)
                stack.append(y)
    sep = [v for v in range(n) if 2 * v in reach and 2 * v + 1 not in reach]
    return flow, sep


def vertex_connectivity(g: Graph, limit: Optional[int] = None) -> tuple[int, Optional[list[int]]]:
    """Vertex connectivity (``n-1`` for complete graphs) and a minimum separator.

    With ``limit``, the search stops early once connectivity is known to be
    at least ``limit``; the returned value is then ``limit``. Among minimum
    separators the one found for the lexicographically first vertex pair is
    returned.
    """
    n = g.n
    if g.is_complete():
        return max(n - 1, 0), None
    best = n - 1 if limit is None else min(limit, n - 1)
    best_sep = None
    for s, t in combinations(range(n), 2):
        if g.has_edge(s, t):
            continue
        flow, sep = _local_connectivity(g, s, t, best)
        if flow < best:
            best, best_sep = flow, sep
            if best == 0:
                break
    return best, best_sep


def is_k_connected(g: Graph, c: int) -> Verdict:
    """``g`` has more than ``c`` vertices and no separator of fewer than ``c`` vertices."""
    if c < 1:
        raise ValueError("connectivity threshold must be at least 1")
    if g.n <= c:
        return Verdict(False, "max-flow", {"reason": "too few vertices", "n": g.n})
    kappa, sep = vertex_connectivity(g, limit=c)
    if kappa >= c:
        return Verdict(True, "max-flow", {"connectivity_at_least": c})
    return Verdict(False, "max-flow", {"connectivity": kappa, "separator": sep})


def exists_edge_two_connected(g: Graph) -> Optional[Edge]:
    """First edge (canonical order) whose deletion leaves a 2-connected graph."""
    for e in g.edges:
        if is_k_connected(g.remove_edges([e]), 2):
            return e
    return None


def is_redundantly_rigid(g: Graph, m: int, seed: int = 0,
                         samples: int = DEFAULT_SAMPLES) -> Verdict:
    """Every ``g - e`` is generically m-rigid."""
    for e in g.edges:
        if not spanning_rigid_subgraph_exists(g.remove_edges([e]), m, seed, samples):
            return Verdict(False, "combinatorial" if m <= 2 else "generic-rank",
                           {"flexible_after_removing": e})
    if not spanning_rigid_subgraph_exists(g, m, seed, samples):
        return Verdict(False, "combinatorial" if m <= 2 else "generic-rank",
                       {"flexible": True})
    return Verdict(True, "combinatorial" if m <= 2 else "generic-rank", {})


def is_globally_rigid_low_dim(g: Graph, m: int) -> Verdict:
    """Generic global m-rigidity for ``m <= 2`` via the known characterisations."""
    if m not in (1, 2):
        raise ValueError("only m in {1, 2} is characterised")
    if g.is_complete() and g.n <= m + 1:
        return Verdict(True, "combinatorial", {"complete": True})
    conn = is_k_connected(g, m + 1)
    if not conn:
        return Verdict(False, "combinatorial", {"connectivity": conn.witness})
    if m == 2:
        red = is_redundantly_rigid(g, 2)
        if not red:
            return Verdict(False, "combinatorial", {"redundancy": red.witness})
    return Verdict(True, "combinatorial", {})


def hendrickson_checks(g: Graph, d: int, k: int) -> Verdict:
    """Necessary conditions for global (d,k)-rigidity inherited from ``(G, p~)``.

    ``answer`` False certifies that ``g`` is not globally (d,k)-rigid;
    True is inconclusive. For ``d-k >= 3`` only connectivity is checked and
    the witness is marked partial.
    """
    if not 1 <= k < d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={d}")
    m = d - k
    if g.is_complete():
        return Verdict(True, "necessary", {"complete": True, "conclusive": False})
    conditions: dict[str, bool] = {}
    details: dict[str, object] = {}
    conn = is_k_connected(g, m + 1)
    conditions[f"{m + 1}-connected"] = conn.answer
    if not conn:
        details["separator"] = conn.witness.get("separator")
    partial = m >= 3
    if m == 2:
        red = is_redundantly_rigid(g, 2)
        conditions["redundantly-2-rigid"] = red.answer
        if not red:
            details.update(red.witness)
    answer = all(conditions.values())
    return Verdict(answer, "necessary", {
        "conditions": conditions,
        "partial": partial,
        "conclusive": not answer,
        **details,
    })
