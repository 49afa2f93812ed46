"""Graphs, frameworks with exact rational coordinates, sampling and JSON I/O.

Vertices are ``0..n-1``. Coordinates are indexed from 0 as well, so the
dilation coordinates of a ``(d, k)`` problem are ``d-k, ..., d-1``.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Iterable, Iterator, Sequence

Edge = tuple[int, int]

GENERIC_BOUND = 2**30
MAX_RESAMPLES = 100
DEFAULT_SAMPLES = 3

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class FrameworkFormatError(ValueError):
    """Raised for malformed graph, framework or certificate documents."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with a canonical (sorted) edge list."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        prev = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise ValueError(f"invalid edge {e} for n={self.n}")
            if prev is not None and e <= prev:
                raise ValueError("edges must be strictly increasing")
            prev = e

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        seen = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, tuple(sorted(seen)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple(combinations(range(n), 2)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index

    def index_of(self, u: int, v: int) -> int:
        return self.edge_index[(min(u, v), max(u, v))]

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def edge_subgraph(self, indices: Iterable[int]) -> "Graph":
        """Spanning subgraph keeping the edges at the given canonical indices."""
        return Graph(self.n, tuple(self.edges[i] for i in sorted(set(indices))))

    def remove_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        drop = {(min(u, v), max(u, v)) for u, v in edges}
        missing = drop - set(self.edges)
        if missing:
            raise ValueError(f"edges not in graph: {sorted(missing)}")
        return Graph(self.n, tuple(e for e in self.edges if e not in drop))

    def remove_vertices(self, vertices: Iterable[int]) -> "Graph":
        """Delete vertices and relabel the rest in increasing order."""
        drop = set(vertices)
        keep = [v for v in range(self.n) if v not in drop]
        relabel = {v: i for i, v in enumerate(keep)}
        return Graph.from_edges(
            len(keep),
            [(relabel[u], relabel[v]) for u, v in self.edges if u in relabel and v in relabel],
        )

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class Framework:
    graph: Graph
    d: int
    positions: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("dimension must be at least 1")
        if len(self.positions) != self.graph.n:
            raise ValueError("need one position per vertex")
        for v, p in enumerate(self.positions):
            if len(p) != self.d:
                raise ValueError(f"vertex {v} has {len(p)} coordinates, expected {self.d}")

    @classmethod
    def from_positions(cls, graph: Graph, positions: Sequence[Sequence]) -> "Framework":
        pos = tuple(tuple(Fraction(x) for x in p) for p in positions)
        d = len(pos[0]) if pos else 1
        return cls(graph, d, pos)

    @property
    def n(self) -> int:
        return self.graph.n

    def coordinate(self, i: int) -> tuple[Fraction, ...]:
        """The map ``v -> p_i(v)`` for 0-indexed coordinate ``i``."""
        return tuple(p[i] for p in self.positions)

    def with_positions(self, positions: Sequence[Sequence]) -> "Framework":
        return Framework.from_positions(self.graph, positions)

    def with_graph(self, graph: Graph) -> "Framework":
        return Framework(graph, self.d, self.positions)

    def to_json(self) -> dict[str, Any]:
        doc = self.graph.to_json()
        doc["d"] = self.d
        doc["positions"] = [[format_rational(x) for x in p] for p in self.positions]
        return doc


@dataclass(frozen=True)
class DilationProblem:
    """A framework in R^d with dilation constraints on its last ``k`` coordinates."""

    framework: Framework
    k: int
    v0: int = 0

    def __post_init__(self) -> None:
        f = self.framework
        if not 1 <= self.k < f.d:
            raise ValueError(f"need 1 <= k < d, got k={self.k}, d={f.d}")
        if not 0 <= self.v0 < f.n:
            raise ValueError(f"base vertex {self.v0} out of range")
        for i in self.dilation_coordinates:
            if f.positions[self.v0][i] == 0:
                raise ValueError(
                    f"dilation coordinate {i} vanishes at base vertex {self.v0}"
                )

    @property
    def dilation_coordinates(self) -> range:
        return range(self.framework.d - self.k, self.framework.d)

    @staticmethod
    def valid_base_vertices(f: Framework, k: int) -> list[int]:
        return [
            v for v in range(f.n)
            if all(f.positions[v][i] != 0 for i in range(f.d - k, f.d))
        ]


@dataclass
class Verdict:
    answer: bool
    method: str
    witness: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.answer

    def to_json(self) -> dict[str, Any]:
        return {"answer": self.answer, "method": self.method, "witness": _jsonable(self.witness)}


@dataclass(frozen=True)
class ConstructionStep:
    """One step of a construction trace.

    ``kind`` is one of ``zero-ext``, ``one-ext``, ``add-edge`` or ``glue``.
    """

    kind: str
    params: dict[str, Any] = field(default_factory=dict)

    KINDS = ("zero-ext", "one-ext", "add-edge", "glue")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown construction step {self.kind!r}")

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, **_jsonable(self.params)}

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "ConstructionStep":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise FrameworkFormatError("construction step needs a 'kind'")
        params = {k: v for k, v in doc.items() if k != "kind"}
        try:
            return cls(doc["kind"], params)
        except ValueError as exc:
            raise FrameworkFormatError(str(exc)) from exc


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, Graph):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(x) for x in items]
    return obj


# -- rationals and JSON -------------------------------------------------------

def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool):
        raise FrameworkFormatError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise FrameworkFormatError(f"not a rational of the form 'a' or 'a/b': {text!r}")
    num, _, den = text.strip().partition("/")
    if den and int(den) == 0:
        raise FrameworkFormatError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def load_document(text: str | dict) -> dict:
    if isinstance(text, dict):
        return text
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameworkFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FrameworkFormatError("top-level JSON value must be an object")
    return doc


def graph_from_json(doc: dict) -> Graph:
    try:
        n = doc["n"]
        edges = doc.get("edges", [])
    except (KeyError, TypeError) as exc:
        raise FrameworkFormatError("graph document needs 'n' and 'edges'") from exc
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FrameworkFormatError(f"'n' must be a non-negative integer, got {n!r}")
    if not isinstance(edges, list) or any(
        not isinstance(e, list) or len(e) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        for e in edges
    ):
        raise FrameworkFormatError("'edges' must be a list of integer pairs")
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise FrameworkFormatError(f"edge {[u, v]} references a missing vertex")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise FrameworkFormatError(str(exc)) from exc


def framework_from_json(doc: dict) -> Framework:
    graph = graph_from_json(doc)
    if "d" not in doc or "positions" not in doc:
        raise FrameworkFormatError("framework document needs 'd' and 'positions'")
    d, positions = doc["d"], doc["positions"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise FrameworkFormatError(f"'d' must be a positive integer, got {d!r}")
    if not isinstance(positions, list) or len(positions) != graph.n:
        raise FrameworkFormatError(f"expected {graph.n} positions")
    pos = []
    for v, p in enumerate(positions):
        if not isinstance(p, list) or len(p) != d:
            raise FrameworkFormatError(f"vertex {v} must have exactly {d} coordinates")
        pos.append(tuple(parse_rational(x) for x in p))
    return Framework(graph, d, tuple(pos))


def parse_framework(text: str | dict) -> Framework:
    """Parse a framework JSON document (see README for the schema)."""
    return framework_from_json(load_document(text))


def parse_graph(text: str | dict) -> Graph:
    """Parse a graph-only document; position fields, if present, are ignored."""
    return graph_from_json(load_document(text))


def serialize(obj: Graph | Framework) -> str:
    return json.dumps(obj.to_json())


# -- realizations --------------------------------------------------------------

def sample_generic(graph: Graph, d: int, seed: int) -> Framework:
    """Random integer realization standing in for a generic one.

    Coordinates are uniform in ``[-2^30, 2^30]``; draws with a zero or a
    repeated coordinate are rejected.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    rng = random.Random(seed)
    count = graph.n * d
    for _ in range(MAX_RESAMPLES):
        coords = [rng.randint(-GENERIC_BOUND, GENERIC_BOUND) for _ in range(count)]
        if 0 not in coords and len(set(coords)) == count:
            pos = tuple(
                tuple(Fraction(c) for c in coords[v * d:(v + 1) * d]) for v in range(graph.n)
            )
            return Framework(graph, d, pos)
    raise RuntimeError("could not draw a generic realization")


def sample_seeds(seed: int, count: int = DEFAULT_SAMPLES) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(63) for _ in range(count)]


def generic_samples(graph: Graph, d: int, seed: int = 0,
                    count: int = DEFAULT_SAMPLES) -> Iterator[Framework]:
    for s in sample_seeds(seed, count):
        yield sample_generic(graph, d, s)


def project(framework: Framework, k: int) -> Framework:
    """Drop the last ``k`` coordinates, giving the framework ``(G, p~)``."""
    if not 1 <= k < framework.d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={framework.d}")
    m = framework.d - k
    return Framework(framework.graph, m, tuple(p[:m] for p in framework.positions))
