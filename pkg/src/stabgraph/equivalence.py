"""State-preserving graph rewrites and the measured-node simplifications.

``apply_e1`` and ``apply_e2`` change the graph but not the state (up to a
global phase).  ``reduce_nodes`` and ``disconnect_hollow_measured`` use them
to bring a set of measured nodes into the form the measurement rule needs:
every measured hollow node loopless and adjacent to measured solid nodes
only.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable

from .errors import EdgeRequired, LoopForbidden, LoopRequired, PreconditionViolated
from .graph import StabilizerGraph, _mask, bits

__all__ = [
    "apply_e1",
    "apply_e2",
    "disconnect_hollow_measured",
    "is_reduced",
    "is_simplified",
    "reduce_nodes",
    "simplify",
]

# Optional observer called as hook(rule, nodes, graph) after each rewrite.
Hook = Callable[[str, tuple, StabilizerGraph], None]


def _e1(g: StabilizerGraph, j: int) -> None:
    bit = 1 << j
    g._hollow ^= bit
    g._lc(j)
    nbrs = g._adj[j]
    g._advance(nbrs)
    g._signs ^= bit
    if g._signs & bit:
        g._signs ^= nbrs


def _e2(g: StabilizerGraph, j: int, k: int) -> None:
    adj = g._adj
    common = adj[j] & adj[k]
    g._hollow ^= (1 << j) | (1 << k)
    g._lc_edge(j, k)
    g._signs ^= common
    # which endpoints carry a sign is read once; the first fixup must not
    # trigger the second through the shared edge
    signed = [v for v in (j, k) if g._signs >> v & 1]
    for v in signed:
        g._signs ^= (1 << v) | adj[v]


def apply_e1(g: StabilizerGraph, j: int) -> StabilizerGraph:
    """Flip the fill of looped node ``j`` and compensate on its neighbourhood.

    Raises
    ------
    LoopRequired
        If ``j`` has no loop.
    """
    if not g.has_loop(j):
        raise LoopRequired(f"node {j} has no loop")
    out = g.copy()
    _e1(out, j)
    return out


def apply_e2(g: StabilizerGraph, j: int, k: int) -> StabilizerGraph:
    """Flip the fills of connected loopless nodes ``j`` and ``k``.

    Raises
    ------
    EdgeRequired
        If ``j`` and ``k`` are not connected.
    LoopForbidden
        If either node has a loop.
    """
    if not g.has_edge(j, k):
        raise EdgeRequired(f"nodes {j} and {k} are not connected")
    if g.has_loop(j) or g.has_loop(k):
        raise LoopForbidden(f"E2 needs loopless nodes, got {j} and {k}")
    out = g.copy()
    _e2(out, j, k)
    return out


def _reduce_step(g: StabilizerGraph, tmask: int) -> tuple[str, tuple] | None:
    hollow_t = g._hollow & tmask
    looped = hollow_t & g._loops
    if looped:
        j = next(bits(looped))
        _e1(g, j)
        return "E1", (j,)
    plain = hollow_t & ~g._loops
    for j in bits(plain):
        partners = g._adj[j] & plain & ~((1 << (j + 1)) - 1)
        if partners:
            k = next(bits(partners))
            _e2(g, j, k)
            return "E2", (j, k)
    return None


def _disconnect_step(g: StabilizerGraph, mmask: int) -> list[tuple[str, tuple]] | None:
    outside = ~mmask
    for h in bits(g._hollow & mmask):
        unmeasured = g._adj[h] & outside
        if not unmeasured:
            continue
        u = next(bits(unmeasured))
        if not g._loops >> u & 1:
            _e2(g, h, u)
            return [("E2", (h, u))]
        _e1(g, u)
        assert g._loops >> h & 1, "E1 on a looped neighbour must give the hollow node a loop"
        _e1(g, h)
        return [("E1", (u,)), ("E1", (h,))]
    return None


def _reduce_in_place(g: StabilizerGraph, tmask: int, hook: Hook | None = None) -> int:
    steps = 0
    while (step := _reduce_step(g, tmask)) is not None:
        steps += 1
        if hook:
            hook(step[0], step[1], g.copy())
    return steps


def _disconnect_in_place(g: StabilizerGraph, mmask: int, hook: Hook | None = None) -> int:
    steps = 0
    while (done := _disconnect_step(g, mmask)) is not None:
        steps += 1
        if hook:
            for rule, nodes in done:
                hook(rule, nodes, g.copy())
    return steps


def _target_mask(g: StabilizerGraph, nodes: Iterable[int]) -> int:
    nodes = list(nodes)
    for j in nodes:
        g._check(j)
    return _mask(nodes)


def is_reduced(g: StabilizerGraph, targets: Iterable[int]) -> bool:
    """True if hollow targets are loopless and pairwise unconnected."""
    tmask = _target_mask(g, targets)
    hollow_t = g._hollow & tmask
    if hollow_t & g._loops:
        return False
    return all(not g._adj[j] & hollow_t for j in bits(hollow_t))


def is_simplified(g: StabilizerGraph, measured: Iterable[int]) -> bool:
    """True if measured hollow nodes are loopless and touch only measured solid nodes."""
    mmask = _target_mask(g, measured)
    hollow_m = g._hollow & mmask
    if hollow_m & g._loops:
        return False
    allowed = mmask & ~g._hollow
    return all(not g._adj[j] & ~allowed for j in bits(hollow_m))


def reduce_nodes(g: StabilizerGraph, targets: Iterable[int]) -> StabilizerGraph:
    """Rewrite until hollow ``targets`` are loopless and mutually unconnected.

    The lowest-index looped hollow target gets E1 first; otherwise the
    lexicographically first connected pair of hollow targets gets E2.  Each
    rewrite turns at least one target solid, so at most ``len(targets)``
    rewrites happen.
    """
    tmask = _target_mask(g, targets)
    out = g.copy()
    _reduce_in_place(out, tmask)
    return out


def disconnect_hollow_measured(g: StabilizerGraph, measured: Iterable[int]) -> StabilizerGraph:
    """Detach measured hollow nodes from unmeasured nodes.

    Raises
    ------
    PreconditionViolated
        If ``g`` is not reduced on ``measured``.
    """
    measured = list(measured)
    if not is_reduced(g, measured):
        raise PreconditionViolated("graph must be reduced on the measured nodes first")
    out = g.copy()
    _disconnect_in_place(out, _target_mask(g, measured))
    return out


def simplify(g: StabilizerGraph, measured: Iterable[int]) -> StabilizerGraph:
    """``reduce_nodes`` followed by ``disconnect_hollow_measured``."""
    mmask = _target_mask(g, measured)
    out = g.copy()
    _reduce_in_place(out, mmask)
    _disconnect_in_place(out, mmask)
    return out
