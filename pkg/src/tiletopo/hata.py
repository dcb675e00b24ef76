"""Connectivity of an attractor via the piece-intersection graph.

An attractor written as a finite union of pieces is connected iff the graph
with one node per piece and an edge per nonempty pairwise intersection is
connected; the predicate only needs to certify nonemptiness, so edges carry a
witness tag saying how much geometry backs them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Hashable, Sequence

from .errors import InvalidParameterError, PredicateError


class EdgeWitness(Enum):
    POINT = "point"
    SEGMENT = "segment"
    NONEMPTY = "nonempty"  # proven nonempty without explicit geometry


@dataclass(frozen=True)
class PieceGraph:
    """Nodes are piece identifiers; edges are unordered pairs with a witness tag."""

    nodes: tuple[Hashable, ...]
    edges: dict[frozenset, EdgeWitness] = field(default_factory=dict)

    def __post_init__(self) -> None:
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise InvalidParameterError("duplicate piece identifiers")
        for pair in self.edges:
            if len(pair) != 2:
                raise InvalidParameterError(f"self-loop or malformed edge: {set(pair)}")
            if not pair <= node_set:
                raise InvalidParameterError(f"edge on unknown nodes: {set(pair)}")

    def neighbors(self, node: Hashable) -> list[Hashable]:
        return [next(iter(pair - {node})) for pair in self.edges if node in pair]

    def to_adjacency_json(self) -> dict:
        """Adjacency-list export for debugging."""
        adj: dict[str, list[str]] = {str(n): [] for n in self.nodes}
        for pair, tag in self.edges.items():
            a, b = sorted(pair, key=str)
            adj[str(a)].append(f"{b}:{tag.value}")
            adj[str(b)].append(f"{a}:{tag.value}")
        return {key: sorted(vals) for key, vals in adj.items()}


def build_graph(
    pieces: Sequence[Hashable],
    intersects: Callable[[Hashable, Hashable], EdgeWitness | bool | None],
) -> PieceGraph:
    """Evaluate the predicate on every unordered pair of pieces.

    The predicate returns an EdgeWitness (or a plain truthy value, recorded as
    NONEMPTY) when the pieces meet, and None/False when they do not.  Any
    exception it raises is re-raised tagged with the offending pair.
    """
    nodes = tuple(pieces)
    edges: dict[frozenset, EdgeWitness] = {}
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            try:
                hit = intersects(a, b)
            except Exception as exc:  # noqa: BLE001 - contract: tag and propagate
                raise PredicateError((a, b)) from exc
            if hit is None or hit is False:
                continue
            edges[frozenset((a, b))] = hit if isinstance(hit, EdgeWitness) else EdgeWitness.NONEMPTY
    return PieceGraph(nodes, edges)


def components(g: PieceGraph) -> tuple[int, list[set]]:
    """Component count and partition, by breadth-first search."""
    seen: set = set()
    parts: list[set] = []
    for start in g.nodes:
        if start in seen:
            continue
        part = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for other in g.neighbors(node):
                if other not in part:
                    part.add(other)
                    frontier.append(other)
        seen |= part
        parts.append(part)
    return len(parts), parts


def is_connected_hata(g: PieceGraph) -> bool:
    """True iff the piece graph (hence the attractor union) is connected."""
    if not g.nodes:
        return True
    return components(g)[0] == 1
