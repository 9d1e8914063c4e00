"""Undirected graphs with per-vertex port labels.

Every edge end carries a local label (a "port") at its vertex, numbered
``0 .. degree-1``.  The walk's basis states are ``(vertex, port)`` pairs,
and the shift step of a coined walk moves amplitude from each port to the
paired port at the other end of the edge.

Port numbers are assigned by append order: each :meth:`PortGraph.connect`
call appends one new port at each endpoint (two at the same vertex for a
self-loop).  Rebuilding a graph with the same sequence of calls therefore
reproduces the port layout, and with it every state vector, bit for bit.

Parallel edges and self-loops are allowed.  A self-loop occupies two
distinct ports on its vertex, paired with each other.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

__all__ = ["PortGraph"]


class PortGraph:
    """Mutable-until-frozen port graph.

    Build with :meth:`add_vertex` and :meth:`connect`, then call
    :meth:`freeze` before running walks on it.  Frozen graphs reject
    further mutation and may be shared freely between threads.
    """

    __slots__ = ("_degrees", "_pairing", "_edges", "_frozen", "_offsets", "_shift")

    def __init__(self) -> None:
        self._degrees: list[int] = []
        self._pairing: dict[tuple[int, int], tuple[int, int]] = {}
        self._edges: list[tuple[int, int]] = []
        self._frozen = False
        self._offsets: np.ndarray | None = None
        self._shift: np.ndarray | None = None

    # -- construction ------------------------------------------------------

    def add_vertex(self) -> int:
        """Append a new vertex with no ports and return its id."""
        if self._frozen:
            raise RuntimeError("graph is frozen")
        self._degrees.append(0)
        return len(self._degrees) - 1

    def add_vertices(self, count: int) -> list[int]:
        return [self.add_vertex() for _ in range(count)]

    def connect(self, u: int, v: int) -> tuple[int, int]:
        """Add an edge between ``u`` and ``v``; return the new port indices.

        For ``u == v`` the edge is a self-loop and the returned ports are
        two consecutive ports on that vertex, paired together.
        """
        if self._frozen:
            raise RuntimeError("graph is frozen")
        for w in (u, v):
            if not 0 <= w < len(self._degrees):
                raise ValueError(f"unknown vertex id {w}")
        cu = self._degrees[u]
        self._degrees[u] += 1
        cv = self._degrees[v]
        self._degrees[v] += 1
        self._pairing[(u, cu)] = (v, cv)
        self._pairing[(v, cv)] = (u, cu)
        self._edges.append((u, v))
        return cu, cv

    def freeze(self) -> "PortGraph":
        """Lock the graph and precompute the flat state layout."""
        if not self._frozen:
            self._frozen = True
            offsets = np.zeros(len(self._degrees) + 1, dtype=np.int64)
            np.cumsum(self._degrees, out=offsets[1:])
            self._offsets = offsets
            shift = np.empty(self.num_ports, dtype=np.int64)
            for (v, c), (w, d) in self._pairing.items():
                shift[offsets[v] + c] = offsets[w] + d
            self._shift = shift
        return self

    # -- inspection --------------------------------------------------------

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def num_vertices(self) -> int:
        return len(self._degrees)

    @property
    def num_ports(self) -> int:
        return sum(self._degrees)

    @property
    def vertices(self) -> range:
        return range(len(self._degrees))

    def degree(self, v: int) -> int:
        if not 0 <= v < len(self._degrees):
            raise ValueError(f"unknown vertex id {v}")
        return self._degrees[v]

    def degrees(self) -> tuple[int, ...]:
        return tuple(self._degrees)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges in insertion order (the order that fixes port labels)."""
        return tuple(self._edges)

    def shift_target(self, v: int, c: int) -> tuple[int, int]:
        """Return the port paired with ``(v, c)``."""
        try:
            return self._pairing[(v, c)]
        except KeyError:
            raise ValueError(f"invalid port ({v}, {c})") from None

    def ports(self, v: int) -> Iterator[tuple[int, int]]:
        for c in range(self.degree(v)):
            yield (v, c)

    # -- flat state layout ---------------------------------------------------

    def offset(self, v: int) -> int:
        """Start of vertex ``v``'s block in the flat amplitude vector."""
        if self._offsets is not None:
            return int(self._offsets[v])
        return sum(self._degrees[:v])

    def state_index(self, v: int, c: int) -> int:
        if not 0 <= c < self.degree(v):
            raise ValueError(f"invalid port ({v}, {c})")
        return self.offset(v) + c

    def shift_permutation(self) -> np.ndarray:
        """Self-inverse permutation of flat indices realising the shift."""
        if self._shift is not None:
            return self._shift
        offs = [self.offset(v) for v in self.vertices]
        shift = np.empty(self.num_ports, dtype=np.int64)
        for (v, c), (w, d) in self._pairing.items():
            shift[offs[v] + c] = offs[w] + d
        return shift

    # -- validation ----------------------------------------------------------

    def validate(self) -> list[str]:
        """Return a list of structural violations (empty when well formed)."""
        problems = []
        for v in self.vertices:
            for c in range(self._degrees[v]):
                target = self._pairing.get((v, c))
                if target is None:
                    problems.append(f"port ({v}, {c}) has no pairing entry")
                    continue
                if target == (v, c):
                    problems.append(f"port ({v}, {c}) is paired with itself")
                    continue
                back = self._pairing.get(target)
                if back != (v, c):
                    problems.append(
                        f"pairing of port ({v}, {c}) is not an involution"
                    )
        for key in self._pairing:
            v, c = key
            if not (0 <= v < self.num_vertices and 0 <= c < self._degrees[v]):
                problems.append(f"pairing references unknown port {key}")
        for v in self.vertices:
            if self._degrees[v] == 0:
                problems.append(f"warning: vertex {v} has no ports")
        return problems

    # -- serialization -------------------------------------------------------

    def to_edge_lines(self) -> str:
        """One line per edge, ``u v``, in insertion order.

        Port labels are implied by line order, so parsing the output with
        :meth:`from_edge_lines` reproduces the graph exactly.
        """
        return "".join(f"{u} {v}\n" for u, v in self._edges)

    @classmethod
    def from_edge_lines(cls, text: str, freeze: bool = True) -> "PortGraph":
        """Parse the edge-list format written by :meth:`to_edge_lines`."""
        graph = cls()
        pending: list[tuple[int, int]] = []
        max_vertex = -1
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(
                    f"line {lineno}: vertex ids must be integers, got {raw!r}"
                ) from None
            if u < 0 or v < 0:
                raise ValueError(f"line {lineno}: vertex ids must be non-negative")
            pending.append((u, v))
            max_vertex = max(max_vertex, u, v)
        graph.add_vertices(max_vertex + 1)
        for u, v in pending:
            graph.connect(u, v)
        if freeze:
            graph.freeze()
        return graph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PortGraph):
            return NotImplemented
        return self._degrees == other._degrees and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((tuple(self._degrees), tuple(self._edges)))

    def __repr__(self) -> str:
        return (
            f"<PortGraph |V|={self.num_vertices} |E|={len(self._edges)}"
            f"{' frozen' if self._frozen else ''}>"
        )
