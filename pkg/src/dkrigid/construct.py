"""Vertex extensions, stress-lifted 1-extensions and certified family building."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .core import ConstructionStep, Edge, Framework, Graph, Verdict, sample_generic, sample_seeds
from .stress import (
    Certificate,
    Stress,
    StressError,
    global_sufficiency,
    is_dilation_stress,
    perturb_nowhere_zero,
    stress_rank,
    stress_space,
    target_rank,
)

log = logging.getLogger(__name__)

FAMILY_RESAMPLES = 3


class ConstructionError(ValueError):
    """A construction step violates its preconditions or loses the certificate."""


def _norm(e: Sequence[int]) -> Edge:
    u, v = (int(x) for x in e)
    return (min(u, v), max(u, v))


def zero_extension(g: Graph, m: int, attach: Sequence[int]) -> Graph:
    """Add vertex ``n`` joined to the ``m`` vertices in ``attach``."""
    attach = [int(a) for a in attach]
    if len(attach) != m or len(set(attach)) != m:
        raise ConstructionError(f"need {m} distinct attachment vertices, got {attach}")
    if any(not 0 <= a < g.n for a in attach):
        raise ConstructionError(f"attachment vertices out of range: {attach}")
    new = g.n
    return Graph.from_edges(g.n + 1, list(g.edges) + [(a, new) for a in attach])


def default_extra(g: Graph, m: int, e: Sequence[int]) -> list[int]:
    """Lowest-index vertices other than the ends of ``e``."""
    ends = set(_norm(e))
    extra = [v for v in range(g.n) if v not in ends][: m - 1]
    if len(extra) != m - 1:
        raise ConstructionError(f"not enough vertices for a {m}-dimensional 1-extension")
    return extra


def one_extension(g: Graph, m: int, e: Sequence[int],
                  extra: Optional[Sequence[int]] = None) -> Graph:
    """Delete edge ``e = xy`` and add vertex ``n`` joined to ``x``, ``y`` and ``extra``."""
    e = _norm(e)
    if not g.has_edge(*e):
        raise ConstructionError(f"edge {e} is not in the graph")
    if extra is None:
        extra = default_extra(g, m, e)
    extra = [int(x) for x in extra]
    if len(extra) != m - 1 or len(set(extra)) != len(extra):
        raise ConstructionError(f"need {m - 1} distinct extra vertices, got {extra}")
    if set(extra) & set(e) or any(not 0 <= x < g.n for x in extra):
        raise ConstructionError(f"extra vertices {extra} collide with {e} or are out of range")
    new = g.n
    edges = [f for f in g.edges if f != e] + [(e[0], new), (e[1], new)] + [(x, new) for x in extra]
    return Graph.from_edges(g.n + 1, edges)


def add_edge(g: Graph, e: Sequence[int]) -> Graph:
    e = _norm(e)
    if g.has_edge(*e) or e[0] == e[1] or not 0 <= e[0] < e[1] < g.n:
        raise ConstructionError(f"cannot add edge {e}")
    return Graph.from_edges(g.n, list(g.edges) + [e])


def one_extension_stress_lift(f: Framework, k: int, s: Stress, e: Sequence[int],
                              extra: Optional[Sequence[int]] = None) -> tuple[Framework, Stress]:
    """1-extend at dimension ``d-k`` with the new vertex at the midpoint of ``e``.

    The lifted stress keeps ``s`` on surviving edges, puts ``2 s_e`` on both
    halves of ``e`` and 0 on the extra edges. Membership in the new stress
    space and the +1 step in ``rank Omega`` are checked exactly.
    """
    e = _norm(e)
    m = f.d - k
    if not is_dilation_stress(f, k, s):
        raise StressError("not a dilation stress of this framework")
    se = s[e]
    if se == 0:
        raise StressError(f"stress vanishes on {e}; perturb it first")
    g2 = one_extension(f.graph, m, e, extra)
    new = f.n
    mid = tuple((a + b) / 2 for a, b in zip(f.positions[e[0]], f.positions[e[1]]))
    f2 = Framework(g2, f.d, f.positions + (mid,))
    vals = []
    for u, v in g2.edges:
        if v == new:
            vals.append(2 * se if u in e else Fraction(0))
        else:
            vals.append(s[(u, v)])
    s2 = Stress(g2, tuple(vals))
    if not is_dilation_stress(f2, k, s2):
        raise AssertionError("lifted stress is not a dilation stress")
    r0, r1 = stress_rank(f, s), stress_rank(f2, s2)
    if r1 != r0 + 1:
        raise AssertionError(f"stress rank went from {r0} to {r1}, expected +1")
    return f2, s2


def _extend_by_zero(s: Stress, g2: Graph) -> Stress:
    return Stress(g2, tuple(s[e] if s.graph.has_edge(*e) else Fraction(0) for e in g2.edges))


def _recertify(g: Graph, d: int, k: int, seed: int, trace: list[ConstructionStep]) -> Certificate:
    target = target_rank(g.n, d, k)
    for s in sample_seeds(seed, FAMILY_RESAMPLES):
        f = sample_generic(g, d, s)
        cert = global_sufficiency(f, k, seed=s)
        if cert is None:
            continue
        sigma = perturb_nowhere_zero(f, k, cert.sigma, seed=s)
        cert = Certificate(f, k, sigma, stress_rank(f, sigma), target, list(trace))
        if cert.verify():
            return cert
    raise ConstructionError(f"lost the full-rank stress on {g} (target rank {target})")


def build_global_family(seed: Certificate, steps: Sequence[ConstructionStep],
                        rng_seed: int = 0) -> Certificate:
    """Apply 1-extensions (at dimension ``d-k``) and edge additions to a certificate.

    Before each 1-extension the current stress is made nowhere zero and
    lifted; after every step the realization is resampled and a full-rank
    stress is recomputed, so each intermediate certificate sits at a random
    integer realization.
    """
    if not seed.verify():
        raise ConstructionError("seed certificate does not verify")
    cert = seed
    d, k = seed.framework.d, seed.k
    m = d - k
    for t, step in enumerate(steps):
        f, s = cert.framework, cert.sigma
        if step.kind == "one-ext":
            e = _norm(step.params["edge"])
            extra = step.params.get("extra")
            if extra is None:
                extra = default_extra(f.graph, m, e)
            if not f.graph.has_edge(*e):
                raise ConstructionError(f"step {t}: edge {e} is not in the graph")
            if s[e] == 0:
                s = perturb_nowhere_zero(f, k, s, seed=rng_seed + t)
            f2, s2 = one_extension_stress_lift(f, k, s, e, extra)
            g2 = f2.graph
            done = ConstructionStep("one-ext", {"edge": list(e), "extra": list(extra)})
        elif step.kind == "add-edge":
            e = _norm(step.params["edge"])
            g2 = add_edge(f.graph, e)
            s2 = _extend_by_zero(s, g2)
            if not is_dilation_stress(f.with_graph(g2), k, s2):
                raise AssertionError("zero extension of the stress left the stress space")
            done = ConstructionStep("add-edge", {"edge": list(e)})
        else:
            raise ConstructionError(f"step {t}: unsupported kind {step.kind!r}")
        cert = _recertify(g2, d, k, rng_seed + 1000 * (t + 1), cert.trace + [done])
        if cert.rank_omega != target_rank(g2.n, d, k):
            raise AssertionError(
                f"step {t}: rank Omega = {cert.rank_omega}, expected {target_rank(g2.n, d, k)}"
            )
        log.debug("step %d (%s): n=%d, rank Omega=%d", t, step.kind, g2.n, cert.rank_omega)
    if not steps and not cert.verify():
        raise AssertionError("seed certificate failed re-verification")
    return cert


def glue_check(g1: Graph, g2: Graph, shared: Mapping[int, int], d: int, k: int) -> Verdict:
    """Check the size hypotheses for gluing two globally (d,k)-rigid graphs.

    ``shared`` maps vertices of ``g2`` to the vertices of ``g1`` they are
    identified with. The union graph numbers ``g1``'s vertices first, then the
    unshared vertices of ``g2`` in increasing order.
    """
    shared = {int(a): int(b) for a, b in shared.items()}
    if len(set(shared.values())) != len(shared):
        raise ValueError("shared-vertex map is not injective")
    if any(not 0 <= a < g2.n for a in shared) or any(not 0 <= b < g1.n for b in shared.values()):
        raise ValueError("shared-vertex map references missing vertices")
    relabel = dict(shared)
    nxt = g1.n
    for v in range(g2.n):
        if v not in relabel:
            relabel[v] = nxt
            nxt += 1
    edges = set(g1.edges)
    for u, v in g2.edges:
        a, b = relabel[u], relabel[v]
        edges.add((min(a, b), max(a, b)))
    union = Graph.from_edges(nxt, edges)
    need = d - k + 2
    conditions = {
        "g1_size": g1.n >= need,
        "g2_size": g2.n >= need,
        "shared": len(shared) >= d - k + 1,
    }
    return Verdict(all(conditions.values()), "hypothesis",
                   {"conditions": conditions, "union": union, "relabel": relabel})
