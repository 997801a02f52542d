from datetime import datetime, timezone
from pathlib import Path

import pytest

from factgraph.alignment import load_tables
from factgraph.graph import KnowledgeGraph, StatementAnnotation

FIXTURES = Path(__file__).parent / "fixtures"

NS = "http://example.org/kg/"

FIXED_TIME = datetime(2025, 6, 1, 12, 0, 0, tzinfo=timezone.utc)


def fixed_clock():
    return FIXED_TIME


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def fixture_kg() -> KnowledgeGraph:
    graph = KnowledgeGraph.from_turtle((FIXTURES / "ground_truth.ttl").read_text())
    graph.set_negation_map(
        {
            NS + "does_not_cause": NS + "causes",
            NS + "does_not_increase": NS + "increases",
        }
    )
    return graph


@pytest.fixture
def fixture_tables():
    return load_tables(FIXTURES / "tables.json")


@pytest.fixture
def annotation():
    def make(*media_ids: str, confidence: float = 1.0, **kwargs) -> StatementAnnotation:
        return StatementAnnotation(
            media_ids=media_ids or ("a" * 16,),
            confidence=confidence,
            asserted_at=kwargs.pop("asserted_at", FIXED_TIME),
            **kwargs,
        )

    return make
