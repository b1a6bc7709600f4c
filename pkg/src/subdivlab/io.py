"""Plain-text edge lists.

Format: a header line ``n m`` followed by ``m`` lines ``u v`` with 0-indexed
endpoints. ``#`` starts a comment that runs to the end of the line; blank
lines are ignored. Written files are canonical: edges as ``min max`` in
lexicographic order, no comments.
"""
from __future__ import annotations

import os
from pathlib import Path

from .corpus import CorpusEntry
from .errors import EdgeListParseError
from .graph import Graph, build_graph

PathLike = str | os.PathLike


def _ints(tokens: list[str], line: int, path) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        bad = next(t for t in tokens if not t.lstrip("+-").isdigit())
        raise EdgeListParseError(f"expected integers, got {bad!r}", line, path) from None


def parse_edge_list(text: str, path: PathLike | None = None) -> tuple[int, list[tuple[int, int]]]:
    """Parse edge-list text into ``(n, edges)`` without building the graph.

    Syntax, range, self-loop and duplicate problems are reported with the
    offending line number. Connectivity is left to :func:`build_graph`.
    """
    header = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) != 2:
            what = "header 'n m'" if header is None else "edge 'u v'"
            raise EdgeListParseError(f"expected {what}, got {len(tokens)} fields", lineno, path)
        a, b = _ints(tokens, lineno, path)
        if header is None:
            if a < 2 or b < 0:
                raise EdgeListParseError(f"header needs n >= 2 and m >= 0, got n={a}, m={b}", lineno, path)
            header = (a, b)
            continue
        n, m = header
        if len(edges) == m:
            raise EdgeListParseError(f"more than the declared {m} edges", lineno, path)
        for x in (a, b):
            if not 0 <= x < n:
                raise EdgeListParseError(f"node {x} outside [0, {n})", lineno, path)
        if a == b:
            raise EdgeListParseError(f"self-loop at node {a}", lineno, path)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise EdgeListParseError(f"edge {key} repeats line {seen[key]}", lineno, path)
        seen[key] = lineno
        edges.append(key)
    if header is None:
        raise EdgeListParseError("missing header 'n m'", last_line or None, path)
    if len(edges) != header[1]:
        raise EdgeListParseError(f"declared {header[1]} edges, found {len(edges)}", last_line, path)
    return header[0], edges


def read_entry(path: PathLike) -> CorpusEntry:
    """Parse a file into an unvalidated corpus entry named after the file stem."""
    p = Path(path)
    try:
        text = p.read_text()
    except UnicodeDecodeError as exc:
        raise EdgeListParseError(f"not a text file ({exc.reason})", None, p) from None
    n, edges = parse_edge_list(text, p)
    return CorpusEntry(p.stem, n, edges)


def read_edge_list(path: PathLike) -> Graph:
    return read_entry(path).build()


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path: PathLike) -> None:
    Path(path).write_text(format_edge_list(g))
