"""Dense state-vector reference used to check the graph rules.

Nothing here is on the simulation path.  States are plain ``complex128``
numpy vectors of length ``2**n``; basis index bit ``n-1-j`` holds qubit
``j`` so node 0 is the most significant bit.
"""

from __future__ import annotations

from collections.abc import Iterable
from functools import lru_cache

import numpy as np

from .errors import ChosenNotEligible, LengthMismatch, TooManyQubits
from .graph import StabilizerGraph
from .pauli import PauliProduct

__all__ = [
    "GATE_MATRICES",
    "MAX_QUBITS",
    "apply_cz",
    "apply_gate",
    "apply_pauli",
    "apply_word",
    "basis_state",
    "cat_state_post",
    "equal_up_to_phase",
    "graph_to_state",
    "prep_circuit",
    "project",
]

MAX_QUBITS = 14

_SQ = 1 / np.sqrt(2)
GATE_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[_SQ, _SQ], [_SQ, -_SQ]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
}


def _nqubits(state: np.ndarray) -> int:
    n = int(state.size).bit_length() - 1
    if 1 << n != state.size:
        raise LengthMismatch(f"state length {state.size} is not a power of two")
    return n


def _check_n(n: int) -> None:
    if n > MAX_QUBITS:
        raise TooManyQubits(f"{n} qubits exceeds the dense oracle cap of {MAX_QUBITS}")


def basis_state(n: int, index: int = 0) -> np.ndarray:
    _check_n(n)
    psi = np.zeros(1 << n, dtype=complex)
    psi[index] = 1
    return psi


@lru_cache(maxsize=1024)
def _cz_diagonal(n: int, j: int, k: int) -> np.ndarray:
    idx = np.arange(1 << n)
    both = (idx >> (n - 1 - j)) & (idx >> (n - 1 - k)) & 1
    diag = np.where(both, -1.0, 1.0)
    diag.flags.writeable = False
    return diag


# Below this size a cached full operator and one matmul beat tensordot.
_SMALL = 6


@lru_cache(maxsize=4096)
def _full_operator(letters: str) -> np.ndarray:
    op = np.ones((1, 1), dtype=complex)
    for c in letters:
        op = np.kron(op, GATE_MATRICES[c])
    op.flags.writeable = False
    return op


def apply_gate(state: np.ndarray, letter: str, j: int) -> np.ndarray:
    """Apply the single-qubit gate named ``letter`` to qubit ``j``."""
    n = _nqubits(state)
    if n <= _SMALL:
        return _full_operator("I" * j + letter + "I" * (n - j - 1)) @ state
    t = state.reshape((2,) * n)
    t = np.tensordot(GATE_MATRICES[letter], t, axes=([1], [j]))
    return np.moveaxis(t, 0, j).reshape(-1)


def apply_word(state: np.ndarray, word: str, j: int) -> np.ndarray:
    """Apply the letters of ``word`` to qubit ``j`` in time order."""
    for letter in word:
        state = apply_gate(state, letter, j)
    return state


def apply_cz(state: np.ndarray, j: int, k: int) -> np.ndarray:
    return state * _cz_diagonal(_nqubits(state), j, k)


def apply_pauli(state: np.ndarray, m: PauliProduct) -> np.ndarray:
    """Exact action of the tensor product ``m`` (global phase included)."""
    n = _nqubits(state)
    m.check_length(n)
    if n <= _SMALL:
        return _full_operator(m.letters) @ state
    for j, letter in enumerate(m.letters):
        if letter != "I":
            state = apply_gate(state, letter, j)
    return state


def prep_circuit(g: StabilizerGraph, state: np.ndarray) -> np.ndarray:
    """Apply the graph's preparation circuit to ``state``.

    ``H`` on every qubit, ``CZ`` on every edge, then ``Z`` on signed nodes,
    ``S`` on looped nodes and ``H`` on hollow nodes.
    """
    _check_n(g.n)
    if _nqubits(state) != g.n:
        raise LengthMismatch(f"state has {_nqubits(state)} qubits, graph has {g.n}")
    for j in range(g.n):
        state = apply_gate(state, "H", j)
    for j, k in g.edges:
        state = apply_cz(state, j, k)
    for j in sorted(g.signs):
        state = apply_gate(state, "Z", j)
    for j in sorted(g.loops):
        state = apply_gate(state, "S", j)
    for j in sorted(g.hollow):
        state = apply_gate(state, "H", j)
    return state


@lru_cache(maxsize=65536)
def _graph_state_cached(g: StabilizerGraph) -> np.ndarray:
    psi = prep_circuit(g, basis_state(g.n))
    psi.flags.writeable = False
    return psi


def graph_to_state(g: StabilizerGraph) -> np.ndarray:
    """Dense amplitudes of the state a graph represents (read-only array)."""
    _check_n(g.n)
    return _graph_state_cached(g.copy())


def project(state: np.ndarray, m: PauliProduct, a: int) -> tuple[float, np.ndarray | None]:
    """Probability of outcome ``(-1)**a`` and the normalized post-measurement state.

    The state is ``None`` when the probability is below ``1e-12``.
    """
    if m.is_trivial:
        raise ValueError("cannot measure the identity")
    mpsi = apply_pauli(state, m)
    v = (state + (-1) ** a * mpsi) / 2
    prob = float(np.vdot(state, v).real)
    if prob <= 1e-12:
        return prob, None
    return prob, v / np.sqrt(prob)


def cat_state_post(
    g: StabilizerGraph, solid_even: Iterable[int], p: int, parity: int
) -> np.ndarray:
    """Post-measurement state built from a cat state on ``solid_even``.

    Prepares the cat state on ``solid_even`` with relative sign
    ``(-1)**parity`` (``H`` on the set, ``Z_p**parity``, ``CZ`` from ``p``
    to the rest, ``H`` on the rest) and then runs the graph's preparation
    circuit on top.  Returns a read-only array.
    """
    return _cat_state_cached(g.copy(), frozenset(solid_even), p, parity % 2)


@lru_cache(maxsize=65536)
def _cat_state_cached(g: StabilizerGraph, solid_even: frozenset, p: int, parity: int) -> np.ndarray:
    se = sorted(set(solid_even))
    if p not in se:
        raise ChosenNotEligible(f"chosen node {p} is not in {se}")
    _check_n(g.n)
    psi = basis_state(g.n)
    for j in se:
        psi = apply_gate(psi, "H", j)
    if parity % 2:
        psi = apply_gate(psi, "Z", p)
    rest = [k for k in se if k != p]
    for k in rest:
        psi = apply_cz(psi, p, k)
    for k in rest:
        psi = apply_gate(psi, "H", k)
    psi = prep_circuit(g, psi)
    psi.flags.writeable = False
    return psi


def equal_up_to_phase(s: np.ndarray, t: np.ndarray, tol: float = 1e-9) -> bool:
    """True if ``s == lam * t`` for some unit complex ``lam`` within ``tol``.

    The phase is read off the largest-magnitude amplitude of ``s``.
    """
    if s.shape != t.shape:
        raise LengthMismatch(f"shapes {s.shape} and {t.shape} differ")
    i = int(np.argmax(np.abs(s)))
    if abs(t[i]) <= tol:
        return bool(np.linalg.norm(s) <= tol and np.linalg.norm(t) <= tol)
    lam = s[i] / t[i]
    lam /= abs(lam)
    d = s - lam * t
    return bool(np.vdot(d, d).real <= tol * tol)
