"""factgraph: claim extraction, knowledge-graph matching, and accuracy scoring.

The pipeline mirrors its module layout: media intake (:mod:`factgraph.media`),
statement extraction and hallucination filtering (:mod:`factgraph.extraction`),
phrase alignment (:mod:`factgraph.alignment`), the trusted triple store
(:mod:`factgraph.graph`, :mod:`factgraph.turtle`), verdicts
(:mod:`factgraph.veracity`), weighted scoring (:mod:`factgraph.scoring`),
and the human-in-the-loop curation service with its HTTP/CLI surfaces
(:mod:`factgraph.curation`, :mod:`factgraph.api`, :mod:`factgraph.cli`).
"""

from .alignment import AlignmentTables, align_triple, load_tables, normalize_phrase
from .curation import CurationService
from .graph import Direction, InsertResult, KnowledgeGraph, StatementAnnotation
from .records import CandidateTriple, ReviewAction, ReviewState, StatementRecord, TrustChannel
from .scoring import AccuracyScore, MetricScore, WeightConfig, register_metric
from .terms import Term, TermKind, Triple, triple
from .turtle import parse_turtle, serialize_turtle
from .veracity import (
    PathEvidence,
    ProximityConfig,
    VeracityVerdict,
    VerdictClass,
    check_veracity,
    proximity_path,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyScore",
    "AlignmentTables",
    "CandidateTriple",
    "CurationService",
    "Direction",
    "InsertResult",
    "KnowledgeGraph",
    "MetricScore",
    "PathEvidence",
    "ProximityConfig",
    "ReviewAction",
    "ReviewState",
    "StatementAnnotation",
    "StatementRecord",
    "Term",
    "TermKind",
    "Triple",
    "TrustChannel",
    "VeracityVerdict",
    "VerdictClass",
    "WeightConfig",
    "align_triple",
    "check_veracity",
    "load_tables",
    "normalize_phrase",
    "parse_turtle",
    "proximity_path",
    "register_metric",
    "serialize_turtle",
    "triple",
]
