"""Small-graph probe comparing the conjectured global (d,k)-rigidity conditions."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterator

import networkx as nx

from .combinat import is_globally_rigid_low_dim, is_k_connected, is_redundantly_rigid
from .core import Graph, generic_samples
from .stress import global_sufficiency

MAX_PROBE_N = 7  # largest order covered by the networkx graph atlas


def graph6(g: Graph) -> str:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return nx.to_graph6_bytes(h, header=False).decode().strip()


def connected_graphs(nmax: int) -> Iterator[Graph]:
    """One representative per isomorphism class of connected graphs on 1..nmax vertices."""
    if nmax > MAX_PROBE_N:
        raise ValueError(f"nmax must be at most {MAX_PROBE_N}")
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0:
            continue
        if n > nmax:
            break
        if nx.is_connected(h):
            yield Graph.from_edges(n, h.edges())


def condition_two(g: Graph, d: int, k: int) -> list[int] | None:
    """Some ``k`` edges whose removal leaves a ``(d-k+1)``-connected, redundantly
    ``(d-k)``-rigid graph (returned as edge indices), else ``None``."""
    m = d - k
    for F in combinations(range(g.m), k):
        h = g.remove_edges([g.edges[i] for i in F])
        if not is_k_connected(h, m + 1):
            continue
        if m == 1 or is_redundantly_rigid(h, m):
            return list(F)
    return None


def condition_three(g: Graph, d: int, k: int) -> list[int] | None:
    """Some ``k`` edges whose removal leaves a globally ``(d-k)``-rigid graph."""
    for F in combinations(range(g.m), k):
        h = g.remove_edges([g.edges[i] for i in F])
        if is_globally_rigid_low_dim(h, d - k):
            return list(F)
    return None


def certify(g: Graph, d: int, k: int, seed: int, samples: int = 3):
    for f in generic_samples(g, d, seed, samples):
        cert = global_sufficiency(f, k, seed=seed)
        if cert is not None:
            return cert
    return None


@dataclass
class ProbeReport:
    d: int
    k: int
    nmax: int
    counts: dict[str, int] = field(default_factory=dict)
    discrepancies: list[dict[str, Any]] = field(default_factory=list)
    records: list[dict[str, Any]] = field(default_factory=list)

    def to_json(self, include_records: bool = False) -> dict[str, Any]:
        doc = {
            "d": self.d,
            "k": self.k,
            "nmax": self.nmax,
            "counts": dict(self.counts),
            "discrepancies": self.discrepancies,
        }
        if include_records:
            doc["records"] = self.records
        return doc


def probe(d: int, k: int, nmax: int, seed: int = 0) -> ProbeReport:
    """Evaluate both edge-removal conditions and the stress certificate on every connected
    non-complete graph up to ``nmax`` vertices.

    Discrepancies are report items; the conjectures involved are open.
    """
    if not 1 <= k < d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={d}")
    if d - k > 2:
        raise ValueError("probe needs d - k <= 2")
    if nmax > MAX_PROBE_N:
        raise ValueError(f"nmax must be at most {MAX_PROBE_N}")
    report = ProbeReport(d, k, nmax)
    counts = dict.fromkeys(
        ["graphs", "complete_skipped", "tested", "condition2", "condition3", "certified"], 0
    )
    for idx, g in enumerate(connected_graphs(nmax)):
        counts["graphs"] += 1
        if g.is_complete():
            counts["complete_skipped"] += 1
            continue
        counts["tested"] += 1
        c2 = condition_two(g, d, k)
        c3 = condition_three(g, d, k)
        cert = certify(g, d, k, seed=seed * 100003 + idx)
        flags = {
            "condition2": c2 is not None,
            "condition3": c3 is not None,
            "certified": cert is not None,
        }
        counts["condition2"] += flags["condition2"]
        counts["condition3"] += flags["condition3"]
        counts["certified"] += flags["certified"]
        key = graph6(g)
        record = {"graph6": key, "n": g.n, "edges": [list(e) for e in g.edges], **flags}
        if c2 is not None:
            record["F"] = [list(g.edges[i]) for i in c2]
        report.records.append(record)
        kinds = []
        if flags["condition2"] and not flags["certified"]:
            kinds.append("condition2-without-certificate")
        if flags["certified"] and not flags["condition2"]:
            kinds.append("certificate-without-condition2")
        if flags["condition2"] != flags["condition3"]:
            kinds.append("condition2-vs-condition3")
        for kind in kinds:
            report.discrepancies.append({"type": kind, **record})
    report.counts = counts
    report.discrepancies.sort(key=lambda r: (r["n"], r["graph6"], r["type"]))
    report.records.sort(key=lambda r: (r["n"], r["graph6"]))
    return report
