"""Weighted aggregation of per-statement metric scores.

The overall accuracy of a statement is the weighted sum of its metric
scores; weights must sum to 1 and the veracity weight must dominate
(w_ver >= 0.5 and w_ver >= the sum of all other weights). Veracity is the
only metric shipped; further metrics plug into the registry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import (
    DuplicateMetric,
    EmptyDocument,
    MissingMetric,
    UnknownMetric,
    VeracityWeightError,
    WeightSumError,
)
from .records import StatementRecord
from .veracity import verdict_to_dict

VERACITY_METRIC = "veracity"

SUM_TOLERANCE = 1e-9


@dataclass(frozen=True, slots=True)
class MetricScore:
    metric_id: str
    value: float
    detail: dict | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"metric {self.metric_id} score {self.value} outside [0, 1]")


MetricEvaluator = Callable[[StatementRecord], MetricScore]


def _veracity_evaluator(record: StatementRecord) -> MetricScore:
    if record.verdict is None:
        raise MissingMetric(f"record {record.record_id} carries no verdict")
    return MetricScore(
        VERACITY_METRIC, record.verdict.veracity, detail=verdict_to_dict(record.verdict)
    )


class MetricRegistry:
    """Named metric evaluators; only registered metrics may be weighted."""

    def __init__(self) -> None:
        self._evaluators: dict[str, MetricEvaluator] = {}
        self.register(VERACITY_METRIC, _veracity_evaluator)

    def register(self, metric_id: str, evaluator: MetricEvaluator) -> None:
        if metric_id in self._evaluators:
            raise DuplicateMetric(f"metric {metric_id!r} is already registered")
        self._evaluators[metric_id] = evaluator

    def knows(self, metric_id: str) -> bool:
        return metric_id in self._evaluators

    def evaluate(self, metric_id: str, record: StatementRecord) -> MetricScore:
        if metric_id not in self._evaluators:
            raise UnknownMetric(f"metric {metric_id!r} is not registered")
        return self._evaluators[metric_id](record)


DEFAULT_REGISTRY = MetricRegistry()


def register_metric(metric_id: str, evaluator: MetricEvaluator) -> None:
    DEFAULT_REGISTRY.register(metric_id, evaluator)


@dataclass(frozen=True)
class WeightConfig:
    weights: dict[str, float] = field(default_factory=lambda: {VERACITY_METRIC: 1.0})

    @property
    def n(self) -> int:
        return len(self.weights)


DEFAULT_WEIGHTS = WeightConfig()


def validate_weights(
    config: WeightConfig, registry: MetricRegistry | None = None
) -> None:
    """Enforce the weight invariants; raises the matching error class."""
    registry = registry or DEFAULT_REGISTRY
    for metric_id in config.weights:
        if not registry.knows(metric_id):
            raise UnknownMetric(f"weight given for unregistered metric {metric_id!r}")
    if VERACITY_METRIC not in config.weights:
        raise VeracityWeightError("weights must include the veracity metric")
    for metric_id, weight in config.weights.items():
        if not 0.0 <= weight <= 1.0:
            raise WeightSumError(f"weight for {metric_id!r} is {weight}, outside [0, 1]")
    total = sum(config.weights.values())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise WeightSumError(f"weights sum to {total}, expected 1")
    w_ver = config.weights[VERACITY_METRIC]
    rest = total - w_ver
    if w_ver < 0.5 or w_ver + SUM_TOLERANCE < rest:
        raise VeracityWeightError(
            f"veracity weight {w_ver} must be >= 0.5 and >= the other weights' sum {rest}"
        )


@dataclass(frozen=True)
class AccuracyScore:
    value: float
    components: tuple[tuple[MetricScore, float], ...]


def score_statement(metrics: list[MetricScore], config: WeightConfig) -> AccuracyScore:
    """Weighted sum over the configured metrics, components echoed for tracing."""
    by_id: dict[str, MetricScore] = {}
    for metric in metrics:
        if metric.metric_id in by_id:
            raise DuplicateMetric(f"metric {metric.metric_id!r} supplied twice")
        by_id[metric.metric_id] = metric
    components = []
    total = 0.0
    for metric_id in sorted(config.weights):
        if metric_id not in by_id:
            raise MissingMetric(f"weighted metric {metric_id!r} missing from scores")
        weight = config.weights[metric_id]
        total += by_id[metric_id].value * weight
        components.append((by_id[metric_id], weight))
    return AccuracyScore(value=total, components=tuple(components))


@dataclass(frozen=True)
class DocumentReport:
    """Per-statement scores plus the document rollup.

    The aggregate (arithmetic mean over statements, Unknowns included at
    their proximity value) is an artifact-level convention; the verdict
    histogram is reported alongside so contradictions cannot hide in the
    mean.
    """

    entries: tuple[tuple[str, AccuracyScore], ...]  # (record_id, score)
    aggregate: float
    verdict_counts: dict[str, int]


def score_document(
    records: list[StatementRecord],
    config: WeightConfig | None = None,
    registry: MetricRegistry | None = None,
) -> DocumentReport:
    """Score each statement and average; raises EmptyDocument on no statements."""
    config = config or DEFAULT_WEIGHTS
    registry = registry or DEFAULT_REGISTRY
    validate_weights(config, registry)
    if not records:
        raise EmptyDocument("document has no extracted statements")
    entries = []
    counts: dict[str, int] = {}
    for record in records:
        if record.verdict is None:
            raise MissingMetric(f"record {record.record_id} carries no verdict")
        metrics = [registry.evaluate(mid, record) for mid in sorted(config.weights)]
        entries.append((record.record_id, score_statement(metrics, config)))
        label = record.verdict.verdict.value
        counts[label] = counts.get(label, 0) + 1
    aggregate = sum(score.value for _, score in entries) / len(entries)
    return DocumentReport(entries=tuple(entries), aggregate=aggregate, verdict_counts=counts)
