"""Decorated graphs representing stabilizer states.

A :class:`StabilizerGraph` on ``n`` nodes stands for the state obtained by
preparing a graph state (``H`` on every qubit, then a controlled-sign gate
per edge) and finishing each qubit with its terminal gates: ``Z`` for a
negative sign, ``S`` for a self loop and ``H`` for a hollow node, applied
in that order.

Adjacency and the three decorations are stored as Python integers used as
bit sets (bit ``j`` is node ``j``).  This keeps copies cheap and makes local
complementation cost ``O(deg)`` big-int XORs.

Graphs are treated as values.  The module-level functions never mutate
their argument; they copy and edit the copy.  Methods whose names start
with an underscore edit in place and are reserved for the rule pipelines,
which work on a single private copy.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import EdgeRequired, IndexOutOfRange, SelfEdgeRejected

__all__ = [
    "StabilizerGraph",
    "advance_loop",
    "bits",
    "flip_fill",
    "flip_sign",
    "local_complement_edge",
    "local_complement_node",
    "make_graph",
    "neighbors",
    "toggle_edge",
]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask(nodes: Iterable[int]) -> int:
    m = 0
    for j in nodes:
        m |= 1 << j
    return m


class StabilizerGraph:
    """Stabilizer state as a graph with hollow, loop and sign decorations.

    Parameters
    ----------
    n : int
        Number of nodes (qubits), at least 1.
    edges : iterable of (int, int)
        Undirected edges.  Repeated entries toggle, so an edge listed an
        even number of times is absent.
    hollow, loops, signs : iterable of int
        Nodes carrying a terminal ``H``, ``S`` and ``Z`` respectively.

    Raises
    ------
    IndexOutOfRange
        If a node index is outside ``range(n)``.
    SelfEdgeRejected
        If an edge joins a node to itself.
    """

    __slots__ = ("n", "_adj", "_hollow", "_loops", "_signs")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        hollow: Iterable[int] = (),
        loops: Iterable[int] = (),
        signs: Iterable[int] = (),
    ):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"node count must be a positive integer, got {n!r}")
        self.n = n
        self._adj = [0] * n
        for j, k in edges:
            self._check(j)
            self._check(k)
            if j == k:
                raise SelfEdgeRejected(f"edge ({j}, {k}) is a self edge; use loops")
            self._toggle(j, k)
        self._hollow = self._node_mask(hollow)
        self._loops = self._node_mask(loops)
        self._signs = self._node_mask(signs)

    @classmethod
    def _raw(cls, n: int, adj: list[int], hollow: int, loops: int, signs: int) -> StabilizerGraph:
        g = cls.__new__(cls)
        g.n = n
        g._adj = adj
        g._hollow = hollow
        g._loops = loops
        g._signs = signs
        return g

    def _node_mask(self, nodes: Iterable[int]) -> int:
        nodes = list(nodes)
        for j in nodes:
            self._check(j)
        return _mask(nodes)

    def _check(self, j: int) -> None:
        if not isinstance(j, int) or not 0 <= j < self.n:
            raise IndexOutOfRange(f"node {j!r} out of range for {self.n} nodes")

    def copy(self) -> StabilizerGraph:
        return StabilizerGraph._raw(self.n, list(self._adj), self._hollow, self._loops, self._signs)

    # ------------------------------------------------------------------
    # read access

    @property
    def hollow(self) -> frozenset[int]:
        return frozenset(bits(self._hollow))

    @property
    def loops(self) -> frozenset[int]:
        return frozenset(bits(self._loops))

    @property
    def signs(self) -> frozenset[int]:
        return frozenset(bits(self._signs))

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(j, k)`` pairs with ``j < k``, sorted."""
        out = []
        for j, row in enumerate(self._adj):
            for k in bits(row >> (j + 1)):
                out.append((j, j + 1 + k))
        return out

    def neighbors(self, j: int) -> frozenset[int]:
        self._check(j)
        return frozenset(bits(self._adj[j]))

    def neighbor_mask(self, j: int) -> int:
        self._check(j)
        return self._adj[j]

    def degree(self, j: int) -> int:
        self._check(j)
        return bin(self._adj[j]).count("1")

    def has_edge(self, j: int, k: int) -> bool:
        self._check(j)
        self._check(k)
        return bool(self._adj[j] >> k & 1)

    def is_hollow(self, j: int) -> bool:
        self._check(j)
        return bool(self._hollow >> j & 1)

    def has_loop(self, j: int) -> bool:
        self._check(j)
        return bool(self._loops >> j & 1)

    def is_signed(self, j: int) -> bool:
        self._check(j)
        return bool(self._signs >> j & 1)

    def adjacency_matrix(self):
        """Return the adjacency matrix as a ``numpy`` uint8 array."""
        import numpy as np

        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for j, k in self.edges:
            a[j, k] = a[k, j] = 1
        return a

    def check_invariants(self) -> None:
        """Raise ``AssertionError`` if the stored graph is malformed."""
        full = (1 << self.n) - 1
        assert len(self._adj) == self.n
        for j, row in enumerate(self._adj):
            assert row & ~full == 0, f"node {j} has out-of-range neighbours"
            assert not row >> j & 1, f"node {j} is its own neighbour"
            for k in bits(row):
                assert self._adj[k] >> j & 1, f"edge ({j}, {k}) is not symmetric"
        for name in ("_hollow", "_loops", "_signs"):
            assert getattr(self, name) & ~full == 0, f"{name} has out-of-range nodes"

    def _key(self) -> tuple:
        return (self.n, tuple(self._adj), self._hollow, self._loops, self._signs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StabilizerGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (
            f"StabilizerGraph(n={self.n}, edges={self.edges}, hollow={sorted(self.hollow)}, "
            f"loops={sorted(self.loops)}, signs={sorted(self.signs)})"
        )

    # ------------------------------------------------------------------
    # in-place primitives (private; callers own the instance)

    def _toggle(self, j: int, k: int) -> None:
        self._adj[j] ^= 1 << k
        self._adj[k] ^= 1 << j

    def _lc(self, j: int) -> None:
        nbrs = self._adj[j]
        adj = self._adj
        for a in bits(nbrs):
            adj[a] ^= nbrs & ~(1 << a)

    def _lc_edge(self, j: int, k: int) -> None:
        self._lc(j)
        self._lc(k)
        self._lc(j)

    def _advance(self, mask: int) -> None:
        """Advance the loops of every node in ``mask``."""
        self._signs ^= self._loops & mask
        self._loops ^= mask

    def _isolate(self, j: int) -> None:
        adj = self._adj
        clear = ~(1 << j)
        for a in bits(adj[j]):
            adj[a] &= clear
        adj[j] = 0


def make_graph(
    n: int,
    edges: Iterable[tuple[int, int]] = (),
    hollow: Iterable[int] = (),
    loops: Iterable[int] = (),
    signs: Iterable[int] = (),
) -> StabilizerGraph:
    """Build a graph with exactly the given decorations (0-based nodes)."""
    return StabilizerGraph(n, edges, hollow, loops, signs)


def neighbors(g: StabilizerGraph, j: int) -> frozenset[int]:
    return g.neighbors(j)


def toggle_edge(g: StabilizerGraph, j: int, k: int) -> StabilizerGraph:
    g._check(j)
    g._check(k)
    if j == k:
        raise SelfEdgeRejected(f"cannot toggle self edge on node {j}")
    h = g.copy()
    h._toggle(j, k)
    return h


def advance_loop(g: StabilizerGraph, j: int) -> StabilizerGraph:
    """Add a loop to ``j``, or remove its loop and flip its sign."""
    g._check(j)
    h = g.copy()
    h._advance(1 << j)
    return h


def flip_fill(g: StabilizerGraph, j: int) -> StabilizerGraph:
    g._check(j)
    h = g.copy()
    h._hollow ^= 1 << j
    return h


def flip_sign(g: StabilizerGraph, j: int) -> StabilizerGraph:
    g._check(j)
    h = g.copy()
    h._signs ^= 1 << j
    return h


def local_complement_node(g: StabilizerGraph, j: int) -> StabilizerGraph:
    """Complement every edge between two neighbours of ``j``."""
    g._check(j)
    h = g.copy()
    h._lc(j)
    return h


def local_complement_edge(g: StabilizerGraph, j: int, k: int) -> StabilizerGraph:
    """Local complementation along the edge ``(j, k)``: on ``j``, ``k``, then ``j``."""
    if not g.has_edge(j, k):
        raise EdgeRequired(f"nodes {j} and {k} are not connected")
    h = g.copy()
    h._lc_edge(j, k)
    return h
