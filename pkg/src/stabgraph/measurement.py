"""Pauli-product measurements on stabilizer graphs.

A measurement of a Pauli product proceeds in three stages:

1. Each ``X`` or ``Y`` factor is rotated to ``Z`` by applying ``H`` (for
   ``X``) or ``S^dagger`` then ``H`` (for ``Y``) to that node.
2. The measured nodes are simplified with E1/E2 so that measured hollow
   nodes are loopless and adjacent only to measured solid nodes.
3. The Z-type measurement is classified.  If no measured solid node has an
   even number of measured hollow neighbours the outcome is certain;
   otherwise it is a fair coin and the graph is rewritten around a chosen
   node.

Finally the rotations of stage 1 are undone on the post-measurement graph.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

import numpy as np

from .clifford import _word
from .equivalence import _disconnect_in_place, _e1, _e2, _reduce_in_place, _target_mask
from .errors import ChosenNotEligible, ImpossibleOutcome, NotSimplified, OutcomesExhausted
from .graph import StabilizerGraph, bits
from .pauli import PauliProduct

__all__ = [
    "BASIS_CHANGE",
    "BASIS_UNDO",
    "Classification",
    "MeasurementRecord",
    "OutcomePolicy",
    "TraceStep",
    "classify",
    "measure_pauli",
    "measure_single",
    "measure_z_product",
    "post_transform",
]

# Words (time order) rotating a measured letter to Z, and their inverses.
BASIS_CHANGE = {"X": "H", "Y": "ZSH", "Z": ""}
BASIS_UNDO = {"X": "H", "Y": "HS", "Z": ""}


class OutcomePolicy:
    """Decides the outcome bit ``a`` (outcome ``(-1)**a``) of random measurements.

    Use :meth:`sample` for fair coin flips from a seeded generator,
    :meth:`force` to prescribe the outcome, or :meth:`sequence` to take
    forced outcomes from a list, one per random measurement.
    """

    def __init__(self, mode: str, *, bit: int | None = None, rng=None, queue=None):
        if mode not in ("sample", "force", "sequence"):
            raise ValueError(f"unknown outcome mode {mode!r}")
        self.mode = mode
        self.bit = bit
        self.rng = rng
        self._queue: Iterator[int] | None = queue

    @classmethod
    def sample(cls, seed: int | np.random.Generator) -> OutcomePolicy:
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        return cls("sample", rng=rng)

    @classmethod
    def force(cls, bit: int) -> OutcomePolicy:
        if bit not in (0, 1):
            raise ValueError(f"outcome bit must be 0 or 1, got {bit!r}")
        return cls("force", bit=bit)

    @classmethod
    def sequence(cls, bits_: Iterable[int]) -> OutcomePolicy:
        bits_ = list(bits_)
        if any(b not in (0, 1) for b in bits_):
            raise ValueError(f"outcome bits must be 0 or 1, got {bits_}")
        return cls("sequence", queue=iter(bits_))

    def draw(self) -> int:
        """Outcome bit for a random measurement."""
        if self.mode == "force":
            return self.bit
        if self.mode == "sample":
            return int(self.rng.integers(0, 2))
        try:
            return next(self._queue)
        except StopIteration:
            raise OutcomesExhausted("no forced outcome left for a random measurement") from None

    def confirm(self, b: int) -> None:
        """Check that the certain outcome ``b`` is compatible with this policy."""
        if self.mode == "force" and self.bit != b:
            sign = "+1" if self.bit == 0 else "-1"
            raise ImpossibleOutcome(f"outcome {sign} has probability 0")

    def __repr__(self) -> str:
        if self.mode == "force":
            return f"OutcomePolicy.force({self.bit})"
        return f"OutcomePolicy({self.mode!r})"


@dataclass(frozen=True)
class Classification:
    """Node sets of a simplified Z-type measurement.

    Attributes
    ----------
    measured : frozenset of int
    solid_measured : frozenset of int
    hollow_measured : frozenset of int
    solid_even : frozenset of int
        Measured solid nodes with an even number of measured hollow
        neighbours.  Empty exactly when the outcome is certain.
    b : int
        Parity of the signed measured hollow nodes; the certain outcome is
        ``(-1)**b``.
    """

    measured: frozenset[int]
    solid_measured: frozenset[int]
    hollow_measured: frozenset[int]
    solid_even: frozenset[int]
    b: int

    @property
    def deterministic(self) -> bool:
        return not self.solid_even


@dataclass(frozen=True)
class TraceStep:
    """One rewrite in a measurement, with the graph right after it.

    ``op`` is ``"gate"`` (``word`` applied to ``nodes[0]``), ``"E1"``,
    ``"E2"`` or ``"project"`` (``outcome`` is the bit ``a``).
    """

    op: str
    nodes: tuple[int, ...]
    graph: StabilizerGraph
    word: str = ""
    outcome: int | None = None


@dataclass(frozen=True)
class MeasurementRecord:
    deterministic: bool
    outcome_a: int
    probability: float
    chosen_node: int | None
    post_graph: StabilizerGraph
    classification: Classification
    basis_words: tuple[tuple[int, str], ...] = ()
    trace: tuple[TraceStep, ...] = field(default=(), repr=False)

    @property
    def outcome(self) -> int:
        """Measured eigenvalue, ``+1`` or ``-1``."""
        return -1 if self.outcome_a else 1


def _classify(g: StabilizerGraph, mmask: int) -> Classification:
    hollow_m = g._hollow & mmask
    solid_m = mmask & ~g._hollow
    se = [j for j in bits(solid_m) if not bin(g._adj[j] & hollow_m).count("1") & 1]
    return Classification(
        measured=frozenset(bits(mmask)),
        solid_measured=frozenset(bits(solid_m)),
        hollow_measured=frozenset(bits(hollow_m)),
        solid_even=frozenset(se),
        b=bin(hollow_m & g._signs).count("1") & 1,
    )


def _is_simplified(g: StabilizerGraph, mmask: int) -> bool:
    hollow_m = g._hollow & mmask
    if hollow_m & g._loops:
        return False
    allowed = mmask & ~g._hollow
    return all(not g._adj[j] & ~allowed for j in bits(hollow_m))


def classify(g: StabilizerGraph, measured: Iterable[int]) -> Classification:
    """Classify a Z-type measurement of ``measured`` on a simplified graph.

    Raises
    ------
    NotSimplified
        If a measured hollow node has a loop or a neighbour other than a
        measured solid node.
    """
    mmask = _target_mask(g, measured)
    if not _is_simplified(g, mmask):
        raise NotSimplified("measured hollow nodes must be loopless and touch only measured solid nodes")
    return _classify(g, mmask)


def _post_transform(g: StabilizerGraph, se: int, p: int, parity: int) -> None:
    adj = g._adj
    pbit = 1 << p
    unchosen = se & ~pbit
    nbrs = adj[p]
    # 1: neighbour x of p toggles its edges to unchosen members; pairs inside
    # nbrs & unchosen are hit twice and stay as they were
    for x in bits(nbrs):
        for q in bits(unchosen & ~(1 << x)):
            g._toggle(x, q)
    # 1 never touches edges at p, so the neighbourhood is unchanged here
    nbrs = adj[p]
    # 2
    if not g._signs & pbit:
        g._signs ^= nbrs & se
    else:
        g._signs ^= pbit | (unchosen & ~nbrs)
    if parity:
        g._signs ^= pbit | nbrs
    # 3
    g._isolate(p)
    for q in bits(unchosen):
        g._toggle(p, q)
    g._hollow |= pbit
    # 4
    if g._loops & pbit:
        g._loops ^= pbit
        g._lc(p)
        g._advance(adj[p])
        if parity:
            g._signs ^= unchosen


def post_transform(
    g: StabilizerGraph, classification: Classification, p: int, parity: int
) -> StabilizerGraph:
    """Post-measurement graph for a random outcome, organised around node ``p``.

    ``parity`` is ``(a + b) % 2``.

    Raises
    ------
    ChosenNotEligible
        If ``p`` is not in ``classification.solid_even``.
    """
    if p not in classification.solid_even:
        raise ChosenNotEligible(f"chosen node {p} is not in {sorted(classification.solid_even)}")
    out = g.copy()
    _post_transform(out, _target_mask(g, classification.solid_even), p, parity % 2)
    return out


class _Tracer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.steps: list[TraceStep] = []

    def hook(self):
        return self.rule if self.enabled else None

    def rule(self, op: str, nodes: tuple, graph: StabilizerGraph) -> None:
        self.steps.append(TraceStep(op, tuple(nodes), graph))

    def add(self, op: str, nodes: tuple, g: StabilizerGraph, **kw) -> None:
        if self.enabled:
            self.steps.append(TraceStep(op, tuple(nodes), g.copy(), **kw))


def _measure_z(
    w: StabilizerGraph,
    mmask: int,
    policy: OutcomePolicy,
    chosen: int | None,
    tracer: _Tracer,
) -> tuple[Classification, bool, int, int | None]:
    """Z-type measurement of ``mmask`` on ``w`` (edited in place)."""
    _reduce_in_place(w, mmask, tracer.hook())
    _disconnect_in_place(w, mmask, tracer.hook())
    cls = _classify(w, mmask)
    if cls.deterministic:
        if chosen is not None:
            raise ChosenNotEligible(f"chosen node {chosen} given but the outcome is certain")
        policy.confirm(cls.b)
        tracer.add("project", tuple(sorted(cls.measured)), w, outcome=cls.b)
        return cls, True, cls.b, None
    if chosen is None:
        p = min(cls.solid_even)
    elif chosen in cls.solid_even:
        p = chosen
    else:
        raise ChosenNotEligible(f"chosen node {chosen} is not in {sorted(cls.solid_even)}")
    a = policy.draw()
    _post_transform(w, _target_mask(w, cls.solid_even), p, (a + cls.b) & 1)
    tracer.add("project", tuple(sorted(cls.measured)), w, outcome=a)
    return cls, False, a, p


def measure_z_product(
    g: StabilizerGraph,
    measured: Iterable[int],
    policy: OutcomePolicy,
    *,
    chosen: int | None = None,
    trace: bool = False,
) -> MeasurementRecord:
    """Measure the product of ``Z`` on ``measured``.

    Parameters
    ----------
    g : StabilizerGraph
    measured : iterable of int
        Non-empty set of measured nodes.
    policy : OutcomePolicy
    chosen : int, optional
        Node to organise the random-outcome rewrite around; defaults to the
        smallest eligible node.  Must be eligible after simplification.
    trace : bool
        Keep a copy of the graph after every rewrite in ``record.trace``.

    Raises
    ------
    ImpossibleOutcome
        If the policy forces an outcome of probability zero.
    """
    mmask = _target_mask(g, measured)
    if not mmask:
        raise ValueError("at least one node must be measured")
    w = g.copy()
    tracer = _Tracer(trace)
    cls, det, a, p = _measure_z(w, mmask, policy, chosen, tracer)
    return MeasurementRecord(
        deterministic=det,
        outcome_a=a,
        probability=1.0 if det else 0.5,
        chosen_node=p,
        post_graph=w,
        classification=cls,
        trace=tuple(tracer.steps),
    )


def measure_pauli(
    g: StabilizerGraph,
    m: PauliProduct | str,
    policy: OutcomePolicy,
    *,
    chosen: int | None = None,
    trace: bool = False,
) -> MeasurementRecord:
    """Measure an arbitrary Pauli product.

    Each ``X``/``Y`` factor is rotated to ``Z`` on both state and
    measurement, the Z-type product is measured, and the rotation is undone
    on the result.  The outcome is that of the rotated measurement.
    ``record.basis_words`` lists the rotation words applied per node.
    """
    if isinstance(m, str):
        m = PauliProduct(m)
    m.check_length(g.n)
    if m.is_trivial:
        raise ValueError("cannot measure the identity")
    w = g.copy()
    tracer = _Tracer(trace)
    words = []
    for j, letter in enumerate(m.letters):
        word = BASIS_CHANGE.get(letter, "")
        if word:
            _word(w, j, word)
            words.append((j, word))
            tracer.add("gate", (j,), w, word=word)
    mmask = _target_mask(g, m.support)
    cls, det, a, p = _measure_z(w, mmask, policy, chosen, tracer)
    for j, letter in enumerate(m.letters):
        word = BASIS_UNDO.get(letter, "")
        if word:
            _word(w, j, word)
            tracer.add("gate", (j,), w, word=word)
    return MeasurementRecord(
        deterministic=det,
        outcome_a=a,
        probability=1.0 if det else 0.5,
        chosen_node=p,
        post_graph=w,
        classification=cls,
        basis_words=tuple(words),
        trace=tuple(tracer.steps),
    )


def measure_single(
    g: StabilizerGraph,
    j: int,
    letter: str,
    policy: OutcomePolicy,
    *,
    trace: bool = False,
) -> MeasurementRecord:
    """Measure ``letter`` (``X``, ``Y`` or ``Z``) on node ``j`` alone.

    Same result as :func:`measure_pauli` with a weight-one product, via the
    short single-node rule: after simplification the node is either an
    isolated loopless hollow node (certain outcome equal to its sign) or a
    solid node (fair coin).  In the random case the node loses its loop and
    sign, the node and its neighbours flip sign on outcome ``-1``, and it
    is disconnected and made hollow.
    """
    g._check(j)
    letter = letter.upper()
    if letter not in ("X", "Y", "Z"):
        raise ValueError(f"single-qubit measurement letter must be X, Y or Z, got {letter!r}")
    w = g.copy()
    tracer = _Tracer(trace)
    bit = 1 << j
    word = BASIS_CHANGE[letter]
    if word:
        _word(w, j, word)
        tracer.add("gate", (j,), w, word=word)

    if w._hollow & bit:
        if w._loops & bit:
            _e1(w, j)
            tracer.add("E1", (j,), w)
        elif w._adj[j]:
            u = next(bits(w._adj[j]))
            if not w._loops >> u & 1:
                _e2(w, j, u)
                tracer.add("E2", (j, u), w)
            else:
                _e1(w, u)
                tracer.add("E1", (u,), w)
                _e1(w, j)
                tracer.add("E1", (j,), w)

    measured = frozenset((j,))
    empty = frozenset()
    if w._hollow & bit:
        b = (w._signs >> j) & 1
        cls = Classification(measured, empty, measured, empty, b)
        policy.confirm(b)
        det, a, p = True, b, None
    else:
        cls = Classification(measured, measured, empty, measured, 0)
        det, a, p = False, policy.draw(), j
        w._loops &= ~bit
        w._signs &= ~bit
        if a:
            w._signs ^= bit | w._adj[j]
        w._isolate(j)
        w._hollow |= bit
    tracer.add("project", (j,), w, outcome=a)

    undo = BASIS_UNDO[letter]
    if undo:
        _word(w, j, undo)
        tracer.add("gate", (j,), w, word=undo)
    return MeasurementRecord(
        deterministic=det,
        outcome_a=a,
        probability=1.0 if det else 0.5,
        chosen_node=p,
        post_graph=w,
        classification=cls,
        basis_words=((j, word),) if word else (),
        trace=tuple(tracer.steps),
    )
