"""Shared instances: reference hypergraphs with known labelings, plus
small named graphs."""

from fractions import Fraction
from pathlib import Path

import pytest

from sephyp.hypercore import Hypergraph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def counterexample_nine_hypergraph() -> Hypergraph:
    """The equatable, non-exchangeable 3-hypergraph on nine vertices."""
    edges = set()
    for i in range(1, 9):
        for j in range(i + 1, 9):
            if j >= 4:
                edges.add((i, j, 9))
    for a in range(2, 10):
        for b in range(a + 1, 10):
            for c in range(b + 1, 10):
                if b >= 5 and c >= 7:
                    edges.add((a, b, c))
    return Hypergraph.from_edges(9, 3, edges)


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def sep_six() -> Hypergraph:
    return Hypergraph.from_edges(
        6, 3,
        [(1, 2, 4), (1, 3, 4), (1, 4, 5), (1, 4, 6), (2, 3, 4),
         (2, 4, 5), (2, 4, 6), (3, 4, 5), (3, 4, 6)],
    )


@pytest.fixture(scope="session")
def sep_six_x() -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in (-1, -1, -1, 3, -2, -2))


@pytest.fixture(scope="session")
def eq_six() -> Hypergraph:
    return Hypergraph.from_edges(
        6, 3,
        [(1, 3, 5), (1, 3, 6), (1, 4, 5), (1, 4, 6),
         (2, 3, 5), (2, 3, 6), (2, 4, 5), (2, 4, 6)],
    )


@pytest.fixture(scope="session")
def eq_six_y() -> dict:
    return {g: Fraction(1) for g in [(1, 3, 4), (1, 3, 5), (2, 4, 6), (2, 5, 6)]}


@pytest.fixture(scope="session")
def paving_five() -> Hypergraph:
    return Hypergraph.from_edges(
        5, 3,
        [(1, 2, 3), (1, 2, 4), (1, 3, 4), (1, 3, 5),
         (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 4, 5)],
    )


@pytest.fixture(scope="session")
def paving_five_y() -> dict:
    return {g: Fraction(1) for g in [(1, 2, 5), (1, 3, 5), (2, 4, 5), (3, 4, 5)]}


@pytest.fixture(scope="session")
def counterexample_nine() -> Hypergraph:
    return counterexample_nine_hypergraph()


@pytest.fixture(scope="session")
def counterexample_nine_y() -> dict:
    return {
        g: Fraction(1)
        for g in [(1, 4, 9), (1, 7, 8), (2, 3, 9), (2, 6, 7), (3, 5, 8), (4, 5, 6)]
    }


@pytest.fixture(scope="session")
def path_four() -> Hypergraph:
    return Hypergraph.from_edges(4, 2, [(1, 2), (2, 3), (3, 4)])


@pytest.fixture(scope="session")
def star_three() -> Hypergraph:
    return Hypergraph.from_edges(4, 2, [(1, 2), (1, 3), (1, 4)])


@pytest.fixture(scope="session")
def complete_two_four() -> Hypergraph:
    return Hypergraph.from_edges(4, 2, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
