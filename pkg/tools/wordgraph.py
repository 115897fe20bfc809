"""
The word graph of a group.

Vertices are the elements of G; there is an arc a -> b exactly when
w(a, b) != 1. Loops are included. Adjacency is a dense bit matrix stored
as one Python int per row (bit b of row a set iff a -> b), which keeps
common-neighbourhood intersections and popcounts cheap.
"""

from fractions import Fraction
from typing import Any, Dict, List, Sequence
import logging

import numpy as np

from group_core import Group
from word_engine import Word, evaluate_block, iter_blocks

logger = logging.getLogger(__name__)


def _row_to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row.astype(bool), bitorder="little").tobytes(), "little")


class WordGraph:
    """Directed graph with bit-row adjacency and a cached arc count."""

    def __init__(self, vertex_count: int, rows: Sequence[int], group_name: str = "", word_source: str = ""):
        if len(rows) != vertex_count:
            raise ValueError(f"expected {vertex_count} rows, got {len(rows)}")
        limit = 1 << vertex_count
        for a, row in enumerate(rows):
            if not 0 <= row < limit:
                raise ValueError(f"row {a} has bits outside 0..{vertex_count - 1}")
        self.vertex_count = vertex_count
        self.rows: tuple = tuple(int(r) for r in rows)
        self.arc_count = sum(r.bit_count() for r in self.rows)
        self.group_name = group_name
        self.word_source = word_source

    @classmethod
    def from_matrix(cls, matrix, group_name: str = "", word_source: str = "") -> "WordGraph":
        """Build from a square boolean adjacency matrix."""
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("adjacency matrix must be square")
        return cls.from_rows([_row_to_int(row) for row in matrix], group_name, word_source)

    @classmethod
    def from_rows(cls, rows: Sequence[int], group_name: str = "", word_source: str = "") -> "WordGraph":
        """Build from bit rows, one int per vertex (bit b of row a set iff a -> b)."""
        return cls(len(rows), rows, group_name, word_source)

    def has_arc(self, a: int, b: int) -> bool:
        return bool((self.rows[a] >> b) & 1)

    def out_degree(self, a: int) -> int:
        return self.rows[a].bit_count()

    def to_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.vertex_count, self.vertex_count), dtype=bool)
        for a, row in enumerate(self.rows):
            for b in bits(row):
                matrix[a, b] = True
        return matrix

    def summary(self) -> Dict[str, Any]:
        """Report record: group, word, t, eta and the exact probability."""
        return {
            "group": self.group_name,
            "word": self.word_source,
            "t": self.vertex_count,
            "eta": self.arc_count,
            "probability": str(satisfaction_probability(self)),
        }

    def __repr__(self) -> str:
        return f"WordGraph(group={self.group_name!r}, word={self.word_source!r}, t={self.vertex_count}, eta={self.arc_count})"


def bits(row: int) -> List[int]:
    """Indices of set bits, ascending."""
    out = []
    while row:
        low = row & -row
        out.append(low.bit_length() - 1)
        row ^= low
    return out


def build(g: Group, w: Word, chunk_rows: int = None) -> WordGraph:
    """
    Evaluate w on all ordered pairs (diagonal included) and collect arcs.

    Rows are filled block by block; each block depends only on the
    immutable group and word.
    """
    rows: List[int] = []
    for block in iter_blocks(g, chunk_rows):
        values = evaluate_block(w, g, block)
        rows.extend(_row_to_int(r) for r in values != g.identity_index)
    graph = WordGraph(g.order, rows, group_name=g.name, word_source=w.label)
    logger.debug(f"Built word graph for {w.label} on {g.name}: t={g.order}, eta={graph.arc_count}")
    return graph


def satisfaction_probability(graph: WordGraph) -> Fraction:
    """Exact probability that w(a, b) = 1: (t^2 - eta) / t^2."""
    t2 = graph.vertex_count ** 2
    return Fraction(t2 - graph.arc_count, t2)


def out_neighborhood(graph: WordGraph, a: int) -> int:
    """Row a of the adjacency bit matrix."""
    if not 0 <= a < graph.vertex_count:
        raise ValueError(f"vertex {a} is not in [0, {graph.vertex_count})")
    return graph.rows[a]


def export_dot(graph: WordGraph) -> str:
    """Graphviz digraph: one node line per vertex, then one line per arc in row-major order."""
    title = f"{graph.group_name} {graph.word_source}".strip() or "word_graph"
    title = title.replace("\\", "\\\\").replace('"', '\\"')
    lines = [f'digraph "{title}" {{']
    lines.extend(f"  {a};" for a in range(graph.vertex_count))
    for a, row in enumerate(graph.rows):
        lines.extend(f"  {a} -> {b};" for b in bits(row))
    lines.append("}")
    return "\n".join(lines) + "\n"
