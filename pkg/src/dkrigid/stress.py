"""Dilation stresses, stress matrices and global rigidity certificates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .core import (
    ConstructionStep,
    DilationProblem,
    Framework,
    FrameworkFormatError,
    Graph,
    format_rational,
    framework_from_json,
    parse_rational,
)
from .exactla import RationalMatrix, left_nullspace, primitive, rank
from .matrices import dilation_jacobian, dr_matrix

SEARCH_TRIALS = 50
COEFF_RANGE = 10
EPSILON_HALVINGS = 64


class StressError(ValueError):
    """A vector that was required to be a dilation stress is not one."""


@dataclass(frozen=True)
class Stress:
    graph: Graph
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.graph.m:
            raise ValueError(f"stress needs {self.graph.m} entries, got {len(self.values)}")

    @classmethod
    def of(cls, graph: Graph, values: Sequence) -> "Stress":
        return cls(graph, tuple(Fraction(x) for x in values))

    def __getitem__(self, edge: tuple[int, int]) -> Fraction:
        return self.values[self.graph.index_of(*edge)]

    def is_zero(self) -> bool:
        return not any(self.values)

    def is_nowhere_zero(self) -> bool:
        return all(self.values)

    def normalized(self) -> "Stress":
        """Primitive integer multiple with positive first nonzero entry."""
        return Stress.of(self.graph, primitive(self.values))

    def __add__(self, other: "Stress") -> "Stress":
        return Stress(self.graph, tuple(a + b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "Stress":
        c = Fraction(c)
        return Stress(self.graph, tuple(c * a for a in self.values))


def combine(graph: Graph, basis: Sequence[Stress], coeffs: Sequence) -> Stress:
    vals = [Fraction(0)] * graph.m
    for c, s in zip(coeffs, basis):
        if c:
            for i, x in enumerate(s.values):
                vals[i] += c * x
    return Stress(graph, tuple(vals))


def stress_matrix(g: Graph, s: Stress) -> RationalMatrix:
    """Laplacian of the stress-weighted graph."""
    if s.graph != g:
        raise ValueError("stress is hosted on a different graph")
    n = g.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (u, v), w in zip(g.edges, s.values):
        rows[u][v] -= w
        rows[v][u] -= w
        rows[u][u] += w
        rows[v][v] += w
    return RationalMatrix.from_rows(rows, n)


def _quadratic_form(omega: RationalMatrix, x: Sequence) -> Fraction:
    y = omega.matvec(x)
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def is_dilation_stress(f: Framework, k: int, s: Stress) -> bool:
    """``s^T DR_k = 0``: equilibrium for ``p~`` and ``p_i^T Omega p_i = 0`` for dilated ``i``."""
    omega = stress_matrix(f.graph, s)
    m = f.d - k
    for i in range(f.d):
        pi = f.coordinate(i)
        if i < m:
            if any(omega.matvec(pi)):
                return False
        elif _quadratic_form(omega, pi) != 0:
            return False
    return True


def stress_space(f: Framework, k: int) -> list[Stress]:
    """Basis of the left null space of ``DR_k(G, p)``, each element normalized."""
    basis = [Stress.of(f.graph, v).normalized() for v in left_nullspace(dr_matrix(f, k))]
    for s in basis:
        if not is_dilation_stress(f, k, s):
            raise AssertionError("computed stress fails its defining equations")
    return basis


def lambda_from_sigma(prob: DilationProblem, s: Stress) -> tuple[Fraction, ...]:
    """Multipliers ``lambda`` making ``(sigma, lambda)`` a left null vector of ``J_v0``.

    Ordered like the Jacobian's dilation rows: coordinate outer, vertices
    other than ``v0`` inner.
    """
    f, v0 = prob.framework, prob.v0
    if not is_dilation_stress(f, prob.k, s):
        raise StressError("not a dilation stress of this framework")
    g = f.graph
    lam = []
    for i in prob.dilation_coordinates:
        pi = f.coordinate(i)
        for v in range(f.n):
            if v == v0:
                continue
            total = sum(
                (s.values[g.index_of(v, w)] * (pi[v] - pi[w]) for w in g.adjacency[v]),
                Fraction(0),
            )
            lam.append(-pi[v0] * total)
    lam = tuple(lam)
    if any(dilation_jacobian(prob).vecmul(s.values + lam)):
        raise AssertionError("(sigma, lambda) is not in the cokernel of J_v0")
    return lam


def stress_rank(f: Framework, s: Stress) -> int:
    return rank(stress_matrix(f.graph, s))


def target_rank(n: int, d: int, k: int) -> int:
    """``|V| - d + k - 1``."""
    return n - d + k - 1


# -- certificates --------------------------------------------------------------------

@dataclass
class Certificate:
    framework: Framework
    k: int
    sigma: Stress
    rank_omega: int
    target: int
    trace: list[ConstructionStep] = field(default_factory=list)

    @property
    def graph(self) -> Graph:
        return self.framework.graph

    def verify(self) -> bool:
        """Re-check membership, nonzero stress and exact rank from scratch."""
        f = self.framework
        return (
            self.sigma.graph == f.graph
            and not self.sigma.is_zero()
            and is_dilation_stress(f, self.k, self.sigma)
            and stress_rank(f, self.sigma) == self.rank_omega
            and self.rank_omega == self.target == target_rank(f.n, f.d, self.k)
        )

    def to_json(self) -> dict[str, Any]:
        f = self.framework
        return {
            "n": f.n,
            "edges": [list(e) for e in f.graph.edges],
            "d": f.d,
            "positions": [[format_rational(x) for x in p] for p in f.positions],
            "k": self.k,
            "sigma": [format_rational(x) for x in self.sigma.values],
            "rank_omega": self.rank_omega,
            "target": self.target,
            "trace": [s.to_json() for s in self.trace],
        }

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "Certificate":
        f = framework_from_json(doc)
        try:
            k = doc["k"]
            sigma = Stress.of(f.graph, [parse_rational(x) for x in doc["sigma"]])
            rank_omega = int(doc["rank_omega"])
            target = int(doc["target"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FrameworkFormatError(f"bad certificate: {exc}") from exc
        trace = [ConstructionStep.from_json(s) for s in doc.get("trace", [])]
        return cls(f, k, sigma, rank_omega, target, trace)


def search_full_rank_stress(f: Framework, k: int, basis: Optional[list[Stress]] = None,
                            seed: int = 0, trials: int = SEARCH_TRIALS) -> tuple[Optional[Stress], int]:
    """Best stress found (highest ``rank Omega``) and its rank.

    Tries each basis element, then random integer combinations with
    coefficients in ``[-10, 10]``; stops as soon as the target is reached.
    """
    if basis is None:
        basis = stress_space(f, k)
    target = target_rank(f.n, f.d, k)
    best, best_rank = None, -1
    if not basis:
        return None, -1
    rng = random.Random(seed)
    candidates = iter(basis)
    for t in range(len(basis) + trials):
        if t < len(basis):
            s = next(candidates)
        else:
            coeffs = [rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in basis]
            s = combine(f.graph, basis, coeffs)
            if s.is_zero():
                continue
        r = stress_rank(f, s)
        if r > best_rank:
            best, best_rank = s, r
            if r >= target:
                break
    return best, best_rank


def global_sufficiency(f: Framework, k: int, seed: int = 0,
                       trials: int = SEARCH_TRIALS) -> Optional[Certificate]:
    """Look for a nonzero dilation stress with ``rank Omega = |V| - d + k - 1``.

    Returns a verified certificate, or ``None`` (inconclusive).
    """
    if not 1 <= k < f.d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={f.d}")
    target = target_rank(f.n, f.d, k)
    if target < 0:
        return None
    s, r = search_full_rank_stress(f, k, seed=seed, trials=trials)
    if s is None or r != target:
        return None
    cert = Certificate(f, k, s.normalized(), r, target)
    if not cert.verify():
        raise AssertionError("certificate failed re-verification")
    return cert


def perturb_nowhere_zero(f: Framework, k: int, s: Stress,
                         basis: Optional[list[Stress]] = None, seed: int = 0,
                         attempts: int = 20) -> Stress:
    """Move ``s`` inside the stress space to a nowhere-zero stress of equal ``rank Omega``.

    Adds ``eps * s_star`` with ``s_star`` a stress nonzero on every edge
    where ``s`` vanishes and ``eps = 1/2, 1/4, ...`` (at most 64 halvings).
    """
    if not is_dilation_stress(f, k, s):
        raise StressError("not a dilation stress of this framework")
    if s.is_nowhere_zero():
        return s
    if basis is None:
        basis = stress_space(f, k)
    r0 = stress_rank(f, s)
    best, best_rank = search_full_rank_stress(f, k, basis, seed=seed)
    if best_rank > r0:
        raise StressError(f"rank of Omega(s) = {r0} is not maximal in the stress space ({best_rank})")
    zeros = [i for i, x in enumerate(s.values) if x == 0]
    for i in zeros:
        if all(b.values[i] == 0 for b in basis):
            raise StressError(
                f"every stress vanishes on edge {f.graph.edges[i]}; no nowhere-zero stress exists"
            )
    rng = random.Random(seed)
    for _ in range(attempts):
        coeffs = [rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in basis]
        star = combine(f.graph, basis, coeffs)
        if any(star.values[i] == 0 for i in zeros):
            continue
        eps = Fraction(1)
        for _ in range(EPSILON_HALVINGS):
            eps /= 2
            cand = s + star.scale(eps)
            if cand.is_nowhere_zero() and stress_rank(f, cand) == r0:
                return cand.normalized()
    raise StressError("perturbation failed to find a nowhere-zero stress")
