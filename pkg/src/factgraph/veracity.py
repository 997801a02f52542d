"""Verdicts for aligned claims against the trusted graph.

Precedence: exact match (Confirmed, veracity 1) beats contradiction
(Contradicted, veracity 0) beats path proximity. Proximity follows the
degree-penalized semantic-proximity weight: over the best undirected path
between subject and object,

    tau = 1 / (1 + sum over interior nodes v of ln(effective_degree(v)))

where effective_degree(v) = max(1, lam * |incoming(v)| + |outgoing(v)|).
Penalizing high-degree interior nodes discounts paths through generic
hub concepts. Absence of any evidence yields Unknown, never Contradicted
(open-world reading).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateClaim
from .graph import Direction, KnowledgeGraph, StatementAnnotation, annotation_to_dict
from .terms import Term, TermKind, Triple


class VerdictClass(Enum):
    CONFIRMED = "confirmed"
    SUPPORTED = "supported"
    CONTRADICTED = "contradicted"
    UNKNOWN = "unknown"


@dataclass(frozen=True, slots=True)
class ExactMatch:
    triple: Triple
    annotation: StatementAnnotation | None


@dataclass(frozen=True, slots=True)
class NegationMatch:
    triple: Triple
    annotation: StatementAnnotation | None


@dataclass(frozen=True, slots=True)
class PathStep:
    edge: Triple
    direction: Direction


@dataclass(frozen=True, slots=True)
class PathEvidence:
    """Best path found, with the interior-degree penalties that priced it."""

    nodes: tuple[Term, ...]
    steps: tuple[PathStep, ...]
    intermediate_degrees: tuple[float, ...]
    proximity: float

    def __post_init__(self) -> None:
        if len(self.nodes) != len(self.steps) + 1:
            raise ValueError("path must have one more node than steps")
        if len(self.intermediate_degrees) != max(0, len(self.nodes) - 2):
            raise ValueError("one degree entry per interior node required")
        if any(d < 1 for d in self.intermediate_degrees):
            raise ValueError("effective degrees are floored at 1")
        expected = 1.0 / (1.0 + sum(math.log(d) for d in self.intermediate_degrees))
        if abs(self.proximity - expected) > 1e-12:
            raise ValueError("proximity inconsistent with interior degrees")


Evidence = ExactMatch | NegationMatch | PathEvidence


@dataclass(frozen=True, slots=True)
class ProximityConfig:
    theta: float = 0.5
    max_hops: int = 6
    incoming_weight: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.theta < 1.0:
            raise ValueError("theta must lie in (0, 1)")
        if self.max_hops < 1:
            raise ValueError("max_hops must be at least 1")
        if self.incoming_weight < 0.0:
            raise ValueError("incoming_weight must be non-negative")


@dataclass(frozen=True, slots=True)
class VeracityVerdict:
    verdict: VerdictClass
    veracity: float
    evidence: Evidence | None
    threshold_used: float


def effective_degree(graph: KnowledgeGraph, node: Term, incoming_weight: float) -> float:
    """Weighted incident-edge count, floored at 1 so ln stays non-negative."""
    weighted = incoming_weight * graph.degree(node, Direction.IN) + graph.degree(
        node, Direction.OUT
    )
    return max(1.0, weighted)


def check_exact(graph: KnowledgeGraph, claim: Triple) -> ExactMatch | None:
    if graph.contains(claim):
        return ExactMatch(claim, graph.annotation(claim))
    return None


def check_contradiction(graph: KnowledgeGraph, claim: Triple) -> NegationMatch | None:
    """Match a stored (subject, q, object) edge where q negates the claim predicate."""
    negated = graph.negation_of(claim.predicate)
    if negated is None:
        return None
    stored = Triple(claim.subject, negated, claim.object)
    if graph.contains(stored):
        return NegationMatch(stored, graph.annotation(stored))
    return None


def proximity_path(
    graph: KnowledgeGraph, claim: Triple, config: ProximityConfig | None = None
) -> PathEvidence | None:
    """Best-proximity undirected path from claim subject to claim object.

    Minimum-cost search over (node, hops) states with per-interior-node cost
    ln(effective_degree); exact because all costs are non-negative. The edge
    equal to the claim itself is never traversed. Ties on cost break on fewer
    hops, then the lexicographic node sequence, then the edge sequence, so
    the returned path is fully deterministic. Returns None when the object
    is unreachable within ``max_hops`` edges.

    Raises DegenerateClaim when subject == object.
    """
    config = config or ProximityConfig()
    source, target = claim.subject, claim.object
    if source == target:
        raise DegenerateClaim(f"claim subject equals object: {source}")
    nodes = graph.nodes()
    if source not in nodes or target not in nodes:
        return None

    degree_cache: dict[Term, float] = {}

    def eff(node: Term) -> float:
        if node not in degree_cache:
            degree_cache[node] = effective_degree(graph, node, config.incoming_weight)
        return degree_cache[node]

    # Heap entries: (cost, hops, node-sequence key, edge-sequence key,
    # insertion counter, node, steps). The leading four fields are exactly
    # the preference order, and every expansion strictly increases them
    # (hops always grow), so the first pop of the target is the global
    # optimum under that order.
    counter = 0
    heap: list[tuple] = [(0.0, 0, (source.sort_key(),), (), counter, source, ())]
    expanded: set[tuple[Term, int]] = set()
    while heap:
        cost, hops, node_key, edge_key, _, node, steps = heapq.heappop(heap)
        if node == target:
            path_nodes = _nodes_from(source, steps)
            degrees = tuple(eff(v) for v in path_nodes[1:-1])
            return PathEvidence(
                nodes=path_nodes,
                steps=steps,
                intermediate_degrees=degrees,
                proximity=1.0 / (1.0 + cost),
            )
        if (node, hops) in expanded:
            continue
        expanded.add((node, hops))
        if hops >= config.max_hops:
            continue
        visited = set(_nodes_from(source, steps))
        for neighbor in graph.neighbors(node):
            if neighbor.edge == claim:
                continue
            nxt = neighbor.other_node
            if nxt in visited:
                continue  # simple paths only
            step_cost = 0.0 if nxt == target else math.log(eff(nxt))
            counter += 1
            heapq.heappush(
                heap,
                (
                    cost + step_cost,
                    hops + 1,
                    node_key + (nxt.sort_key(),),
                    edge_key + ((neighbor.edge.sort_key(), neighbor.direction.value),),
                    counter,
                    nxt,
                    steps + (PathStep(neighbor.edge, neighbor.direction),),
                ),
            )
    return None


def _nodes_from(source: Term, steps: tuple[PathStep, ...]) -> tuple[Term, ...]:
    nodes = [source]
    for step in steps:
        nodes.append(step.edge.object if step.direction is Direction.OUT else step.edge.subject)
    return tuple(nodes)


def check_veracity(
    graph: KnowledgeGraph, claim: Triple, config: ProximityConfig | None = None
) -> VeracityVerdict:
    """Full verdict with precedence Confirmed > Contradicted > Supported/Unknown."""
    config = config or ProximityConfig()
    exact = check_exact(graph, claim)
    if exact is not None:
        return VeracityVerdict(VerdictClass.CONFIRMED, 1.0, exact, config.theta)
    negation = check_contradiction(graph, claim)
    if negation is not None:
        return VeracityVerdict(VerdictClass.CONTRADICTED, 0.0, negation, config.theta)
    evidence = proximity_path(graph, claim, config)
    if evidence is None:
        return VeracityVerdict(VerdictClass.UNKNOWN, 0.0, None, config.theta)
    if evidence.proximity >= config.theta:
        return VeracityVerdict(
            VerdictClass.SUPPORTED, evidence.proximity, evidence, config.theta
        )
    return VeracityVerdict(VerdictClass.UNKNOWN, evidence.proximity, evidence, config.theta)


# -- JSON encoding ------------------------------------------------------------


def _term_json(term: Term) -> dict:
    return {"kind": term.kind.value, "value": term.value}


def _triple_json(triple: Triple) -> dict:
    return {
        "subject": triple.subject.value,
        "predicate": triple.predicate.value,
        "object": _term_json(triple.object),
    }


def evidence_to_dict(evidence: Evidence | None) -> dict | None:
    if evidence is None:
        return None
    if isinstance(evidence, ExactMatch):
        return {
            "type": "exact_match",
            "triple": _triple_json(evidence.triple),
            "annotation": (
                annotation_to_dict(evidence.triple, evidence.annotation)
                if evidence.annotation
                else None
            ),
        }
    if isinstance(evidence, NegationMatch):
        return {
            "type": "negation_match",
            "triple": _triple_json(evidence.triple),
            "annotation": (
                annotation_to_dict(evidence.triple, evidence.annotation)
                if evidence.annotation
                else None
            ),
        }
    return {
        "type": "path",
        "nodes": [_term_json(n) for n in evidence.nodes],
        "edges": [
            {"triple": _triple_json(s.edge), "direction": s.direction.value}
            for s in evidence.steps
        ],
        "intermediate_degrees": list(evidence.intermediate_degrees),
        "proximity": evidence.proximity,
    }


def verdict_to_dict(verdict: VeracityVerdict) -> dict:
    return {
        "verdict": verdict.verdict.value,
        "veracity": verdict.veracity,
        "threshold_used": verdict.threshold_used,
        "evidence": evidence_to_dict(verdict.evidence),
    }


def _term_from_json(data: dict) -> Term:
    return Term(TermKind(data["kind"]), data["value"])


def _triple_from_json(data: dict) -> Triple:
    return Triple(
        Term.iri(data["subject"]),
        Term.iri(data["predicate"]),
        _term_from_json(data["object"]),
    )


def verdict_from_dict(data: dict) -> VeracityVerdict:
    from .graph import annotation_from_dict

    evidence_data = data.get("evidence")
    evidence: Evidence | None = None
    if evidence_data:
        kind = evidence_data["type"]
        if kind in ("exact_match", "negation_match"):
            ann = None
            if evidence_data.get("annotation"):
                _, ann = annotation_from_dict(evidence_data["annotation"])
            cls = ExactMatch if kind == "exact_match" else NegationMatch
            evidence = cls(_triple_from_json(evidence_data["triple"]), ann)
        elif kind == "path":
            nodes = tuple(_term_from_json(n) for n in evidence_data["nodes"])
            steps = tuple(
                PathStep(_triple_from_json(e["triple"]), Direction(e["direction"]))
                for e in evidence_data["edges"]
            )
            evidence = PathEvidence(
                nodes=nodes,
                steps=steps,
                intermediate_degrees=tuple(evidence_data["intermediate_degrees"]),
                proximity=evidence_data["proximity"],
            )
    return VeracityVerdict(
        verdict=VerdictClass(data["verdict"]),
        veracity=data["veracity"],
        evidence=evidence,
        threshold_used=data["threshold_used"],
    )
