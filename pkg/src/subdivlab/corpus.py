"""Small named graphs used by the verification suite and the demos."""
from __future__ import annotations

from typing import Callable, NamedTuple, Sequence

from .graph import Graph, build_graph


class CorpusEntry(NamedTuple):
    """Unvalidated graph description; building it may fail."""

    name: str
    n: int
    edges: Sequence[tuple[int, int]]

    def build(self) -> Graph:
        return build_graph(self.n, self.edges)


def path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def cycle_edges(n: int) -> list[tuple[int, int]]:
    return path_edges(n) + [(0, n - 1)]


def complete_edges(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def star_edges(n: int) -> list[tuple[int, int]]:
    """Star on ``n`` nodes with centre 0."""
    return [(0, i) for i in range(1, n)]


def petersen_edges() -> list[tuple[int, int]]:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return outer + spokes + inner


def path(n: int) -> Graph:
    return build_graph(n, path_edges(n))


def cycle(n: int) -> Graph:
    return build_graph(n, cycle_edges(n))


def complete(n: int) -> Graph:
    return build_graph(n, complete_edges(n))


def star(n: int) -> Graph:
    return build_graph(n, star_edges(n))


def petersen() -> Graph:
    return build_graph(10, petersen_edges())


DEFAULT_CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("single_edge", 2, [(0, 1)]),
    CorpusEntry("P3", 3, path_edges(3)),
    CorpusEntry("K3", 3, complete_edges(3)),
    CorpusEntry("K4", 4, complete_edges(4)),
    CorpusEntry("C4", 4, cycle_edges(4)),
    CorpusEntry("C5", 5, cycle_edges(5)),
    CorpusEntry("S4", 4, star_edges(4)),
    CorpusEntry("Petersen", 10, petersen_edges()),
)


def default_corpus() -> list[CorpusEntry]:
    return list(DEFAULT_CORPUS)


GRAPH_FACTORIES: dict[str, Callable[[], Graph]] = {
    e.name: e.build for e in DEFAULT_CORPUS
}
