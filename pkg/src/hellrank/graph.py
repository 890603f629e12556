"""Bipartite graph container, edge-list ingestion and one-mode projection.

Node labels are arbitrary strings, scoped per side: the same string may
appear on both sides and then denotes two distinct nodes.  Graphs are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, TextIO


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def other(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class EdgeListParseError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class UnknownNodeError(KeyError):
    pass


@dataclass(frozen=True)
class NeighborDegreeVector:
    """Sparse histogram of a node's neighbors keyed by their degree.

    ``entries[i]`` is the number (or summed link weight) of neighbors whose
    degree equals ``i``.  The total mass equals the (weighted) degree of the
    node the vector was built from.
    """

    entries: dict[int, float]

    def __post_init__(self):
        for k, v in self.entries.items():
            if k < 1:
                raise ValueError(f"degree keys must be >= 1, got {k}")
            if v < 0:
                raise ValueError(f"masses must be >= 0, got {v}")

    @property
    def total_mass(self) -> float:
        return sum(self.entries.values())

    def dense(self, length: int | None = None) -> list[float]:
        """Dense view (index i-1 holds the mass for degree i)."""
        n = length if length is not None else (max(self.entries) if self.entries else 0)
        out = [0.0] * n
        for k, v in self.entries.items():
            out[k - 1] = v
        return out


class BipartiteGraph:
    """Immutable two-mode graph.  Links connect a left node to a right node."""

    def __init__(
        self,
        edges: Iterable[tuple[str, str]],
        weights: Iterable[float] | None = None,
        isolated_left: Iterable[str] = (),
        isolated_right: Iterable[str] = (),
    ):
        edges = list(edges)
        if weights is not None:
            weights = list(weights)
            if len(weights) != len(edges):
                raise ValueError("weights must match edges one-to-one")
            for w in weights:
                if not w > 0:
                    raise ValueError(f"link weights must be > 0, got {w}")

        adj_left: dict[str, list[str]] = {}
        adj_right: dict[str, list[str]] = {}
        wmap: dict[tuple[str, str], float] = {}
        for i, (u, v) in enumerate(edges):
            if (u, v) in wmap:
                # duplicate link: collapse, summing weights when present
                if weights is not None:
                    wmap[(u, v)] += weights[i]
                continue
            wmap[(u, v)] = weights[i] if weights is not None else 1.0
            adj_left.setdefault(u, []).append(v)
            adj_right.setdefault(v, []).append(u)
        for u in isolated_left:
            adj_left.setdefault(u, [])
        for v in isolated_right:
            adj_right.setdefault(v, [])

        self._left = tuple(adj_left)
        self._right = tuple(adj_right)
        self._adj = {
            Side.LEFT: {u: tuple(sorted(ns)) for u, ns in adj_left.items()},
            Side.RIGHT: {v: tuple(sorted(ns)) for v, ns in adj_right.items()},
        }
        self._weights = wmap if weights is not None else None

    # -- basic accessors ---------------------------------------------------

    @property
    def left_nodes(self) -> tuple[str, ...]:
        return self._left

    @property
    def right_nodes(self) -> tuple[str, ...]:
        return self._right

    def nodes(self, side: Side) -> tuple[str, ...]:
        return self._left if side is Side.LEFT else self._right

    @property
    def n1(self) -> int:
        return len(self._left)

    @property
    def n2(self) -> int:
        return len(self._right)

    @property
    def num_links(self) -> int:
        return sum(len(ns) for ns in self._adj[Side.LEFT].values())

    @property
    def is_weighted(self) -> bool:
        return self._weights is not None

    def neighbors(self, node: str, side: Side | None = None) -> tuple[str, ...]:
        side = self._resolve_side(node, side)
        return self._adj[side][node]

    def degree(self, node: str, side: Side | None = None) -> int:
        """|N(node)|."""
        return len(self.neighbors(node, side))

    def link_weight(self, u: str, v: str) -> float:
        """Weight of the link between left node u and right node v."""
        if self._weights is None:
            raise ValueError("graph has no link weights")
        try:
            return self._weights[(u, v)]
        except KeyError:
            raise UnknownNodeError(f"no link {u!r} -- {v!r}") from None

    def side_of(self, node: str) -> Side:
        return self._resolve_side(node, None)

    def _resolve_side(self, node: str, side: Side | None) -> Side:
        if side is not None:
            if node not in self._adj[side]:
                raise UnknownNodeError(f"unknown {side.value} node {node!r}")
            return side
        on_left = node in self._adj[Side.LEFT]
        on_right = node in self._adj[Side.RIGHT]
        if on_left and on_right:
            raise ValueError(
                f"label {node!r} exists on both sides; pass side= explicitly"
            )
        if on_left:
            return Side.LEFT
        if on_right:
            return Side.RIGHT
        raise UnknownNodeError(f"unknown node {node!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            sorted(self._left) == sorted(other._left)
            and sorted(self._right) == sorted(other._right)
            and {u: ns for u, ns in self._adj[Side.LEFT].items()}
            == {u: ns for u, ns in other._adj[Side.LEFT].items()}
            and self._weights == other._weights
        )

    def __repr__(self) -> str:
        return (
            f"BipartiteGraph(n1={self.n1}, n2={self.n2}, links={self.num_links}"
            f"{', weighted' if self.is_weighted else ''})"
        )


class UnipartiteGraph:
    """Simple undirected graph (projection target and threshold graph)."""

    def __init__(self, nodes: Iterable[str], edges: Iterable[tuple[str, str]]):
        self._nodes = tuple(dict.fromkeys(nodes))
        known = set(self._nodes)
        adj: dict[str, set[str]] = {n: set() for n in self._nodes}
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if u not in known or v not in known:
                raise UnknownNodeError(f"edge ({u!r}, {v!r}) references unknown node")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {n: tuple(sorted(ns)) for n, ns in adj.items()}

    @property
    def nodes(self) -> tuple[str, ...]:
        return self._nodes

    def neighbors(self, node: str) -> tuple[str, ...]:
        try:
            return self._adj[node]
        except KeyError:
            raise UnknownNodeError(f"unknown node {node!r}") from None

    def degree(self, node: str) -> int:
        return len(self.neighbors(node))

    def edges(self) -> list[tuple[str, str]]:
        return [(u, v) for u in self._nodes for v in self._adj[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def to_edge_list(self, stream: TextIO, delimiter: str = "\t") -> None:
        for u, v in self.edges():
            stream.write(f"{u}{delimiter}{v}\n")

    def to_dot(self, stream: TextIO, name: str = "G") -> None:
        stream.write(f"graph {name} {{\n")
        for n in self._nodes:
            stream.write(f'  "{n}";\n')
        for u, v in self.edges():
            stream.write(f'  "{u}" -- "{v}";\n')
        stream.write("}\n")

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnipartiteGraph):
            return NotImplemented
        return sorted(self._nodes) == sorted(other._nodes) and self._adj == other._adj


def load_edge_list(
    lines: Iterable[str],
    delimiter: str | None = None,
    has_weights: bool = False,
    comment_prefixes: tuple[str, ...] = ("%", "#"),
    isolated_left: Iterable[str] = (),
    isolated_right: Iterable[str] = (),
) -> BipartiteGraph:
    """Parse a two- or three-column edge list into a BipartiteGraph.

    First column = left node, second = right node, optional third = weight.
    ``delimiter=None`` splits on any run of whitespace (KONECT-style files).
    Duplicate lines collapse; with weights their weights are summed.
    """
    edges: list[tuple[str, str]] = []
    weights: list[float] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(comment_prefixes):
            continue
        fields = line.split(delimiter)
        want = 3 if has_weights else 2
        if len(fields) != want:
            raise EdgeListParseError(
                lineno, f"expected {want} fields, got {len(fields)}: {line!r}"
            )
        edges.append((fields[0], fields[1]))
        if has_weights:
            try:
                w = float(fields[2])
            except ValueError:
                raise EdgeListParseError(
                    lineno, f"non-numeric weight {fields[2]!r}"
                ) from None
            if not w > 0:
                raise EdgeListParseError(lineno, f"weight must be > 0, got {w}")
            weights.append(w)
    return BipartiteGraph(
        edges,
        weights if has_weights else None,
        isolated_left=isolated_left,
        isolated_right=isolated_right,
    )


def load_node_list(lines: Iterable[str]) -> tuple[list[str], list[str]]:
    """Parse a sidecar node list declaring (possibly isolated) nodes.

    Each data line is ``left <label>`` or ``right <label>``; comment lines
    start with ``%`` or ``#``.
    """
    left: list[str] = []
    right: list[str] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(("%", "#")):
            continue
        fields = line.split(None, 1)
        if len(fields) != 2 or fields[0] not in ("left", "right"):
            raise EdgeListParseError(
                lineno, f"expected 'left <label>' or 'right <label>', got {line!r}"
            )
        (left if fields[0] == "left" else right).append(fields[1])
    return left, right


def neighbor_degree_vector(
    graph: BipartiteGraph, node: str, side: Side | None = None
) -> NeighborDegreeVector:
    """Count the node's neighbors by their degree (sparse histogram)."""
    side = graph._resolve_side(node, side)
    entries: dict[int, float] = {}
    for nb in graph.neighbors(node, side):
        d = graph.degree(nb, side.other)
        entries[d] = entries.get(d, 0.0) + 1.0
    return NeighborDegreeVector(entries)


def weighted_neighbor_degree_vector(
    graph: BipartiteGraph, node: str, side: Side | None = None
) -> NeighborDegreeVector:
    """Like neighbor_degree_vector but each neighbor contributes its link weight."""
    if not graph.is_weighted:
        raise ValueError("graph has no link weights")
    side = graph._resolve_side(node, side)
    entries: dict[int, float] = {}
    for nb in graph.neighbors(node, side):
        d = graph.degree(nb, side.other)
        w = graph.link_weight(node, nb) if side is Side.LEFT else graph.link_weight(nb, node)
        entries[d] = entries.get(d, 0.0) + w
    return NeighborDegreeVector(entries)


def project(graph: BipartiteGraph, side: Side) -> UnipartiteGraph:
    """One-mode projection: u -- v iff u and v share at least one neighbor."""
    nodes = graph.nodes(side)
    edges: set[tuple[str, str]] = set()
    for mid in graph.nodes(side.other):
        ns = graph.neighbors(mid, side.other)
        for i in range(len(ns)):
            for j in range(i + 1, len(ns)):
                u, v = ns[i], ns[j]
                edges.add((u, v) if u <= v else (v, u))
    return UnipartiteGraph(nodes, edges)
