"""Differential sweeps of the graph rules against the dense oracle.

Every check returns ``None`` on success or a :class:`Counterexample` that
serializes to JSON, so a failing case can be replayed by hand.
"""

from __future__ import annotations

import itertools
import time
from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .clifford import apply_h, apply_s, apply_word, apply_z
from .equivalence import apply_e1, apply_e2, simplify
from .errors import ImpossibleOutcome, OutcomesExhausted
from .graph import StabilizerGraph
from .measurement import BASIS_CHANGE, BASIS_UNDO, OutcomePolicy, measure_pauli
from .pauli import PauliProduct
from .serialize import graph_to_dict

PROB_TOL = 1e-12
STATE_TOL = 1e-9


@dataclass
class Counterexample:
    check: str
    graph: StabilizerGraph
    detail: str
    pauli: str | None = None
    outcome: int | None = None
    node: int | None = None

    def to_dict(self) -> dict:
        out = {"check": self.check, "detail": self.detail, "graph": graph_to_dict(self.graph)}
        for key in ("pauli", "outcome", "node"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


@dataclass
class SweepResult:
    name: str
    cases: int = 0
    failures: int = 0
    first: Counterexample | None = None
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, cx: Counterexample | None) -> None:
        self.cases += 1
        if cx is not None:
            self.failures += 1
            if self.first is None:
                self.first = cx


# ----------------------------------------------------------------------
# case generators


def all_graphs(n: int) -> Iterator[StabilizerGraph]:
    """Every graph on ``n`` nodes: all edge sets times all decorations."""
    pairs = list(itertools.combinations(range(n), 2))
    for em in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if em >> i & 1]
        for d in range(1 << (3 * n)):
            yield StabilizerGraph(
                n,
                edges,
                hollow=[j for j in range(n) if d >> j & 1],
                loops=[j for j in range(n) if d >> (n + j) & 1],
                signs=[j for j in range(n) if d >> (2 * n + j) & 1],
            )


def all_products(n: int) -> Iterator[PauliProduct]:
    for letters in itertools.product("IXYZ", repeat=n):
        if set(letters) != {"I"}:
            yield PauliProduct("".join(letters))


def random_graph(n: int, rng: np.random.Generator, edge_prob: float = 0.5) -> StabilizerGraph:
    """Dense random graph with each decoration present with probability 1/2."""
    edges = [(j, k) for j, k in itertools.combinations(range(n), 2) if rng.random() < edge_prob]
    deco = rng.integers(0, 2, size=(3, n))
    return StabilizerGraph(
        n,
        edges,
        hollow=np.flatnonzero(deco[0]).tolist(),
        loops=np.flatnonzero(deco[1]).tolist(),
        signs=np.flatnonzero(deco[2]).tolist(),
    )


def random_sparse_graph(n: int, mean_degree: float, rng: np.random.Generator) -> StabilizerGraph:
    """Random graph with about ``n * mean_degree / 2`` distinct edges."""
    m = int(n * mean_degree / 2)
    seen: set[tuple[int, int]] = set()
    while len(seen) < m:
        j, k = (int(x) for x in rng.integers(0, n, size=2))
        if j != k:
            seen.add((min(j, k), max(j, k)))
    deco = rng.integers(0, 2, size=(3, n))
    return StabilizerGraph(
        n,
        sorted(seen),
        hollow=np.flatnonzero(deco[0]).tolist(),
        loops=np.flatnonzero(deco[1]).tolist(),
        signs=np.flatnonzero(deco[2]).tolist(),
    )


def random_product(n: int, rng: np.random.Generator) -> PauliProduct:
    weight = int(rng.integers(1, n + 1))
    support = rng.choice(n, size=weight, replace=False)
    letters = ["I"] * n
    for j in support:
        letters[int(j)] = "XYZ"[int(rng.integers(0, 3))]
    return PauliProduct("".join(letters))


# ----------------------------------------------------------------------
# single-case checks


def _rotated_simplified(g: StabilizerGraph, m: PauliProduct) -> StabilizerGraph:
    w = g
    for j, letter in enumerate(m.letters):
        if BASIS_CHANGE.get(letter):
            w = apply_word(w, j, BASIS_CHANGE[letter])
    return simplify(w, m.support)


def _undo_dense(state: np.ndarray, m: PauliProduct) -> np.ndarray:
    for j, letter in enumerate(m.letters):
        if BASIS_UNDO.get(letter):
            state = oracle.apply_word(state, BASIS_UNDO[letter], j)
    return state


def check_measurement(
    g: StabilizerGraph,
    m: PauliProduct,
    outcomes: tuple[int, ...] | None = None,
    *,
    chosen_invariance: bool = False,
    remeasure: bool = False,
) -> Counterexample | None:
    """Compare a graph measurement with the dense projection.

    Checks, for each requested outcome ``a`` (default: both):
    (a) the oracle probability is 0, 1/2 or 1;
    (b) the graph reports a certain outcome exactly when it is 0 or 1;
    (c) a certain outcome equals ``(-1)**b`` and leaves the state alone;
    (d) a random outcome yields the normalized projected state;
    (e) the cat-state construction yields the same state.
    Optionally also that every eligible chosen node gives the same state
    and that re-measuring is certain and harmless.
    """
    psi = oracle.graph_to_state(g)
    probs = {}
    posts = {}
    for a in (0, 1):
        probs[a], posts[a] = oracle.project(psi, m, a)

    def fail(check, detail, a=None):
        return Counterexample(check, g, detail, pauli=m.letters, outcome=a)

    for a, p in probs.items():
        if min(abs(p), abs(p - 0.5), abs(p - 1)) > PROB_TOL:
            return fail("a:trichotomy", f"oracle probability {p!r}", a)

    simp = None
    for a in outcomes if outcomes is not None else (0, 1):
        feasible = probs[a] > PROB_TOL
        try:
            rec = measure_pauli(g, m, OutcomePolicy.force(a))
        except ImpossibleOutcome:
            if feasible:
                return fail("b:classification", f"forced outcome rejected but has probability {probs[a]}", a)
            continue
        if not feasible:
            return fail("b:classification", "graph accepted an outcome of probability 0", a)
        certain = abs(probs[a] - 1) <= PROB_TOL
        if rec.deterministic != certain:
            return fail("b:classification", f"deterministic={rec.deterministic}, probability={probs[a]}", a)
        post = oracle.graph_to_state(rec.post_graph)
        if rec.deterministic:
            if rec.classification.b != a:
                return fail("c:certain-outcome", f"b={rec.classification.b} but oracle outcome a={a}", a)
            if not oracle.equal_up_to_phase(post, psi, STATE_TOL):
                return fail("c:certain-outcome", "state changed by a certain measurement", a)
            continue
        if not oracle.equal_up_to_phase(post, posts[a], STATE_TOL):
            return fail("d:post-state", f"post graph {rec.post_graph!r} differs from projection", a)
        if simp is None:
            simp = _rotated_simplified(g, m)
        cat = oracle.cat_state_post(
            simp, rec.classification.solid_even, rec.chosen_node, (a + rec.classification.b) % 2
        )
        if not oracle.equal_up_to_phase(_undo_dense(cat, m), post, STATE_TOL):
            return fail("e:cat-state", "cat-state construction disagrees with the post graph", a)
        if chosen_invariance:
            for p in sorted(rec.classification.solid_even):
                alt = measure_pauli(g, m, OutcomePolicy.force(a), chosen=p)
                if not oracle.equal_up_to_phase(oracle.graph_to_state(alt.post_graph), posts[a], STATE_TOL):
                    return fail("chosen-invariance", f"chosen node {p} gives a different state", a)
        if remeasure:
            try:
                again = measure_pauli(rec.post_graph, m, OutcomePolicy.sequence([]))
            except OutcomesExhausted as exc:
                return fail("remeasure", f"second measurement not certain: {exc}", a)
            if again.outcome_a != a:
                return fail("remeasure", f"second outcome {again.outcome_a} != {a}", a)
            if not oracle.equal_up_to_phase(oracle.graph_to_state(again.post_graph), post, STATE_TOL):
                return fail("remeasure", "second measurement changed the state", a)
    return None


_GATE_RULES = (("H", apply_h), ("S", apply_s), ("Z", apply_z))


def check_rules(g: StabilizerGraph) -> Counterexample | None:
    """Gate rules against dense gates and E1/E2 against state preservation, at every node."""
    psi = oracle.graph_to_state(g)
    for j in range(g.n):
        for letter, rule in _GATE_RULES:
            got = oracle.graph_to_state(rule(g, j))
            if not oracle.equal_up_to_phase(got, oracle.apply_gate(psi, letter, j), STATE_TOL):
                return Counterexample(f"rule:{letter}", g, f"{letter} on node {j}", node=j)
        if g.has_loop(j):
            if not oracle.equal_up_to_phase(oracle.graph_to_state(apply_e1(g, j)), psi, STATE_TOL):
                return Counterexample("rule:E1", g, f"E1 on node {j} changes the state", node=j)
        for k in range(j + 1, g.n):
            if g.has_edge(j, k) and not g.has_loop(j) and not g.has_loop(k):
                for a, b in ((j, k), (k, j)):
                    out = apply_e2(g, a, b)
                    if not oracle.equal_up_to_phase(oracle.graph_to_state(out), psi, STATE_TOL):
                        return Counterexample("rule:E2", g, f"E2 on nodes ({a}, {b}) changes the state", node=a)
    return None


# ----------------------------------------------------------------------
# sweeps


def exhaustive_measurement_sweep(n: int, stop_early: bool = False) -> SweepResult:
    res = SweepResult(f"exhaustive measurements n={n}")
    t0 = time.perf_counter()
    products = list(all_products(n))
    for g in all_graphs(n):
        for m in products:
            res.record(check_measurement(g, m))
            if stop_early and res.failures:
                break
        if stop_early and res.failures:
            break
    res.seconds = time.perf_counter() - t0
    return res


def random_measurement_sweep(cases: int, max_n: int, seed: int, stop_early: bool = False) -> SweepResult:
    """Random graphs with ``1 <= n <= max_n``, random products and one feasible outcome each."""
    rng = np.random.default_rng(seed)
    res = SweepResult(f"random measurements n<={max_n}")
    t0 = time.perf_counter()
    for _ in range(cases):
        n = int(rng.integers(1, max_n + 1))
        g = random_graph(n, rng)
        m = random_product(n, rng)
        psi = oracle.graph_to_state(g)
        p0, _ = oracle.project(psi, m, 0)
        feasible = [a for a, p in ((0, p0), (1, 1 - p0)) if p > PROB_TOL]
        a = feasible[int(rng.integers(0, len(feasible)))]
        res.record(check_measurement(g, m, (a,), chosen_invariance=True, remeasure=True))
        if stop_early and res.failures:
            break
    res.seconds = time.perf_counter() - t0
    return res


def exhaustive_rule_sweep(n: int, stop_early: bool = False) -> SweepResult:
    res = SweepResult(f"exhaustive rules n={n}")
    t0 = time.perf_counter()
    for g in all_graphs(n):
        res.record(check_rules(g))
        if stop_early and res.failures:
            break
    res.seconds = time.perf_counter() - t0
    return res


def random_rule_sweep(cases: int, max_n: int, seed: int, stop_early: bool = False) -> SweepResult:
    rng = np.random.default_rng(seed)
    res = SweepResult(f"random rules n<={max_n}")
    t0 = time.perf_counter()
    for _ in range(cases):
        g = random_graph(int(rng.integers(1, max_n + 1)), rng)
        res.record(check_rules(g))
        if stop_early and res.failures:
            break
    res.seconds = time.perf_counter() - t0
    return res
