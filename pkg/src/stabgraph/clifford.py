"""Local Clifford gates ``H``, ``S`` and ``Z`` as graph transformations.

Each public function returns a new graph; the underscore variants edit a
graph the caller already owns.  ``S^dagger`` is the word ``"ZS"``.
"""

from __future__ import annotations

from .graph import StabilizerGraph

__all__ = ["GATES", "apply_gate", "apply_h", "apply_s", "apply_word", "apply_z", "inverse_word"]

GATES = frozenset("HSZ")


def _h(g: StabilizerGraph, j: int) -> None:
    g._hollow ^= 1 << j


def _s(g: StabilizerGraph, j: int) -> None:
    bit = 1 << j
    if not g._hollow & bit:
        g._advance(bit)
        return
    signed = bool(g._signs & bit)
    nbrs = g._adj[j]
    if g._loops & bit:
        g._hollow ^= bit
        g._loops ^= bit
        g._lc(j)
        g._advance(nbrs)
        if not signed:
            g._signs ^= nbrs
    else:
        g._lc(j)
        g._advance(nbrs)
        if signed:
            g._signs ^= nbrs


def _z(g: StabilizerGraph, j: int) -> None:
    bit = 1 << j
    if not g._hollow & bit:
        g._signs ^= bit
        return
    g._signs ^= g._adj[j]
    if g._loops & bit:
        g._signs ^= bit


_APPLY = {"H": _h, "S": _s, "Z": _z}


def _word(g: StabilizerGraph, j: int, word: str) -> None:
    for letter in word:
        _APPLY[letter](g, j)


def _validate_word(word: str) -> None:
    bad = set(word) - GATES
    if bad:
        raise ValueError(f"unknown gate letters {sorted(bad)} in word {word!r}")


def apply_h(g: StabilizerGraph, j: int) -> StabilizerGraph:
    """Hadamard on node ``j``: flips its fill."""
    g._check(j)
    out = g.copy()
    _h(out, j)
    return out


def apply_s(g: StabilizerGraph, j: int) -> StabilizerGraph:
    """Phase gate on node ``j``.

    A solid node has its loop advanced.  On a hollow node the node is
    locally complemented and its neighbours' loops advanced; whether the
    neighbours' signs also flip depends on the node's sign, and a looped
    hollow node additionally turns solid and loses its loop.
    """
    g._check(j)
    out = g.copy()
    _s(out, j)
    return out


def apply_z(g: StabilizerGraph, j: int) -> StabilizerGraph:
    g._check(j)
    out = g.copy()
    _z(out, j)
    return out


def apply_gate(g: StabilizerGraph, letter: str, j: int) -> StabilizerGraph:
    _validate_word(letter)
    if len(letter) != 1:
        raise ValueError(f"expected a single gate letter, got {letter!r}")
    return apply_word(g, j, letter)


def apply_word(g: StabilizerGraph, j: int, word: str) -> StabilizerGraph:
    """Apply the gates of ``word`` to node ``j``, left to right in time."""
    _validate_word(word)
    g._check(j)
    out = g.copy()
    _word(out, j, word)
    return out


def inverse_word(word: str) -> str:
    """Word undoing ``word`` (``S`` inverts to ``ZS``; ``H`` and ``Z`` are self-inverse)."""
    _validate_word(word)
    return "".join("ZS" if c == "S" else c for c in reversed(word))
