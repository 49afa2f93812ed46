"""Rigidity matrix, dilation Jacobian and the reduced ``DR_k`` matrix.

Column layout of the Jacobian and ``DR_k`` is coordinate-major: the block for
coordinate 0 (all vertices), then coordinate 1, and so on. The plain
rigidity matrix uses the vertex-major layout (``d`` columns per vertex).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .core import (
    DEFAULT_SAMPLES,
    DilationProblem,
    Framework,
    Graph,
    Verdict,
    generic_samples,
)
from .exactla import RationalMatrix, hstack, rank

ZERO = Fraction(0)


def rigidity_matrix(f: Framework) -> RationalMatrix:
    """The ``|E| x d|V|`` rigidity matrix, vertex-major columns."""
    d, n = f.d, f.n
    rows = []
    for u, v in f.graph.edges:
        row = [ZERO] * (d * n)
        for i in range(d):
            diff = f.positions[u][i] - f.positions[v][i]
            row[u * d + i] = diff
            row[v * d + i] = -diff
        rows.append(row)
    return RationalMatrix.from_rows(rows, d * n)


def coordinate_rigidity_matrix(graph: Graph, values: Sequence) -> RationalMatrix:
    """Rigidity matrix of the 1-dimensional framework ``(G, values)``."""
    n = graph.n
    rows = []
    for u, v in graph.edges:
        row = [ZERO] * n
        diff = Fraction(values[u]) - Fraction(values[v])
        row[u] = diff
        row[v] = -diff
        rows.append(row)
    return RationalMatrix.from_rows(rows, n)


def dilation_jacobian(prob: DilationProblem) -> RationalMatrix:
    """Jacobian of the edge-length and dilation-ratio constraints.

    Rows: edges in canonical order, then one row per (dilation coordinate,
    vertex other than ``v0``), coordinates outer. Shape is
    ``(|E| + k(|V|-1)) x d|V|``.
    """
    f, k, v0 = prob.framework, prob.k, prob.v0
    g, n, d = f.graph, f.n, f.d
    top = hstack(*(coordinate_rigidity_matrix(g, f.coordinate(i)) for i in range(d))) \
        if g.m else RationalMatrix.zeros(0, d * n)
    rows = [list(top.row(r)) for r in range(top.rows)]
    for i in prob.dilation_coordinates:
        pi = f.coordinate(i)
        base = pi[v0]
        for v in range(n):
            if v == v0:
                continue
            row = [ZERO] * (d * n)
            row[i * n + v] = 1 / base
            row[i * n + v0] = -pi[v] / base**2
            rows.append(row)
    return RationalMatrix.from_rows(rows, d * n)


def dr_matrix(f: Framework, k: int) -> RationalMatrix:
    """``[R(G, p~) | f_{G,1}(p_{d-k+1}) | ... | f_{G,1}(p_d)]``, ``|E| x ((d-k)|V| + k)``."""
    if not 1 <= k < f.d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={f.d}")
    g, n, m = f.graph, f.n, f.d - k
    coords = [f.coordinate(i) for i in range(f.d)]
    rows = []
    for u, v in g.edges:
        row = [ZERO] * (m * n + k)
        for i in range(m):
            diff = coords[i][u] - coords[i][v]
            row[i * n + u] = diff
            row[i * n + v] = -diff
        for j in range(k):
            c = coords[m + j]
            row[m * n + j] = (c[u] - c[v]) ** 2
        rows.append(row)
    return RationalMatrix.from_rows(rows, m * n + k)


def rigid_rank(n: int, m: int) -> int:
    """Rank of the rigidity matrix of a generic m-rigid framework on ``n`` vertices."""
    if n <= m:
        return comb(n, 2)
    return m * n - comb(m + 1, 2)


def dk_rank_target(n: int, d: int, k: int) -> int:
    """``(d-k)|V| - C(d-k+1, 2) + k``, the ``DR_k`` rank of a rigid framework."""
    return (d - k) * n - comb(d - k + 1, 2) + k


def affine_dimension(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return rank(RationalMatrix.from_rows(diffs, len(base)))


def is_infinitesimally_dk_rigid(prob: DilationProblem, use: str = "dr") -> Verdict:
    """Decide infinitesimal (d,k)-rigidity of a concrete framework.

    ``use`` picks the matrix for non-complete graphs: ``"dr"`` or ``"jacobian"``.
    """
    f, k = prob.framework, prob.k
    n, d = f.n, f.d
    if f.graph.is_complete():
        dim = affine_dimension(f.positions)
        target = min(d, n - 1)
        return Verdict(dim == target, "complete-clause",
                       {"affine_dimension": dim, "target": target})
    if use == "dr":
        r = rank(dr_matrix(f, k))
        target = dk_rank_target(n, d, k)
        name = "DR_k"
    elif use == "jacobian":
        r = rank(dilation_jacobian(prob))
        target = d * n - comb(d - k + 1, 2)
        name = "J_v0"
    else:
        raise ValueError(f"unknown matrix {use!r}")
    return Verdict(r == target, "generic-rank",
                   {"matrix": name, "rank": r, "target": target, "v0": prob.v0})


def generic_dk_rank(graph: Graph, d: int, k: int, seed: int = 0,
                    samples: int = DEFAULT_SAMPLES) -> int:
    """Max ``DR_k`` rank over random integer realizations."""
    return max(rank(dr_matrix(f, k)) for f in generic_samples(graph, d, seed, samples))


def is_generically_dk_rigid(graph: Graph, d: int, k: int, seed: int = 0,
                            samples: int = DEFAULT_SAMPLES) -> Verdict:
    """Rank-based verdict at sampled realizations (max rank over ``samples``)."""
    if not 1 <= k < d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={d}")
    if graph.is_complete():
        return Verdict(True, "complete-clause", {"complete": True})
    r = generic_dk_rank(graph, d, k, seed, samples)
    target = dk_rank_target(graph.n, d, k)
    return Verdict(r == target, "generic-rank",
                   {"matrix": "DR_k", "rank": r, "target": target, "samples": samples})


def _ratio_star(p: Sequence, q: Sequence, v0: int) -> bool:
    return all(p[v] / p[v0] == q[v] / q[v0] for v in range(len(p)) if v != v0)


def _ratio_tree(p: Sequence, q: Sequence, tree: Sequence[tuple[int, int]]) -> bool:
    return all(p[u] / p[v] == q[u] / q[v] for u, v in tree)


def _spanning_tree(n: int) -> list[tuple[int, int]]:
    # a path is a valid connected auxiliary graph H
    return [(v, v + 1) for v in range(n - 1)]


def check_dk_equivalent(f: Framework, g: Framework, k: int, v0: int = 0) -> Verdict:
    """Decide (d,k)-equivalence and report the dilation scalars ``alpha_i``.

    ``alpha_i`` satisfies ``p_i = alpha_i * q_i``. When every dilation
    coordinate of both frameworks is nonzero, the ratio systems based at
    ``v0`` and along a spanning path are evaluated and must agree.
    """
    if f.graph != g.graph or f.d != g.d:
        raise ValueError("frameworks must share graph and dimension")
    if not 1 <= k < f.d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={f.d}")
    lengths = all(
        sum((a - b) ** 2 for a, b in zip(f.positions[u], f.positions[v]))
        == sum((a - b) ** 2 for a, b in zip(g.positions[u], g.positions[v]))
        for u, v in f.graph.edges
    )
    alphas: dict[int, Fraction | None] = {}
    ratio_checks: dict[int, dict[str, bool]] = {}
    for i in range(f.d - k, f.d):
        p, q = f.coordinate(i), g.coordinate(i)
        alpha = None
        ref = next((v for v in range(f.n) if q[v] != 0), None)
        if ref is not None and p[ref] != 0:
            cand = p[ref] / q[ref]
            if all(a == cand * b for a, b in zip(p, q)):
                alpha = cand
        alphas[i] = alpha
        if f.n and all(p) and all(q):
            star = _ratio_star(p, q, v0)
            tree = _ratio_tree(p, q, _spanning_tree(f.n))
            if star != tree or star != (alpha is not None):
                raise AssertionError(f"ratio systems disagree on coordinate {i}")
            ratio_checks[i] = {"star": star, "tree": tree}
    answer = lengths and all(a is not None for a in alphas.values())
    return Verdict(answer, "exact", {
        "lengths_equal": lengths,
        "alphas": {i: a for i, a in alphas.items()},
        "ratio_checks": ratio_checks,
    })


def is_congruent(f: Framework, g: Framework) -> bool:
    """All pairwise squared distances agree."""
    if f.n != g.n or f.d != g.d:
        raise ValueError("frameworks must have the same vertex count and dimension")
    for u in range(f.n):
        for v in range(u + 1, f.n):
            a = sum((x - y) ** 2 for x, y in zip(f.positions[u], f.positions[v]))
            b = sum((x - y) ** 2 for x, y in zip(g.positions[u], g.positions[v]))
            if a != b:
                return False
    return True
