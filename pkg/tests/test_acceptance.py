"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see only these lines.
"""

import json
import time

import numpy as np
import pytest

from stabgraph import (
    OutcomePolicy,
    PauliProduct,
    StabilizerGraph,
    apply_e1,
    apply_e2,
    apply_word,
    classify,
    measure_pauli,
    measure_single,
    measure_z_product,
    post_transform,
)
from stabgraph import oracle as O
from stabgraph import verify as V

from conftest import one_based

TOL = 1e-9


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        return ok

    return emit


def cluster4():
    return StabilizerGraph(4, one_based((1, 2), (2, 3), (3, 4), (4, 1)))


def cluster2x3():
    return StabilizerGraph(6, one_based((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (2, 5)))


def test_criterion_1_four_qubit_cluster(report):
    g = cluster4()
    want = StabilizerGraph(4, one_based((1, 3), (2, 3), (2, 4)), hollow=[1], signs=[2])
    best = float("inf")
    for _ in range(50):
        t0 = time.perf_counter()
        rec = measure_z_product(g, [1, 2, 3], OutcomePolicy.force(0), chosen=1)
        best = min(best, time.perf_counter() - t0)
    c = rec.classification
    ok = (
        c.solid_even == {1, 2, 3}
        and c.b == 0
        and not rec.deterministic
        and rec.post_graph == want
        and not rec.post_graph.loops
        and best < 1e-3
    )
    assert report(1, ok, f"classification and exact final graph, {best * 1e6:.0f} us"), rec


def _z_product(n, nodes):
    return PauliProduct.from_support(n, nodes)


def _replay_pipeline(g, letters_seq):
    """Measure each product with trace on; check the graph state after every step."""
    psi = O.graph_to_state(g)
    steps = 0
    for letters in letters_seq:
        m = PauliProduct(letters)
        rec = measure_pauli(g, m, OutcomePolicy.sequence([0]), trace=True)
        for step in rec.trace:
            if step.op == "gate":
                psi = O.apply_word(psi, step.word, step.nodes[0])
            elif step.op == "project":
                prob, psi = O.project(psi, _z_product(g.n, m.support), step.outcome)
                assert psi is not None, "graph projected onto a zero-probability outcome"
            if not O.equal_up_to_phase(O.graph_to_state(step.graph), psi, TOL):
                return False, steps, f"{letters}: diverged after {step.op} {step.nodes}"
            steps += 1
        g = rec.post_graph
    return True, steps, ""


def _replay_by_hand():
    """The hand-drawn derivation: chosen rule applications, oracle-checked at each one."""
    g = cluster2x3()
    psi = O.graph_to_state(g)
    checks = []

    def check(graph, state):
        checks.append(O.equal_up_to_phase(O.graph_to_state(graph), state, TOL))
        return graph, state

    def z_measure(graph, state, j):
        c = classify(graph, [j])
        assert c.solid_even == {j}
        _, state = O.project(state, _z_product(6, [j]), 0)
        return check(post_transform(graph, c, j, c.b), state)

    # (a) X on node 1
    g, psi = check(apply_word(g, 0, "H"), O.apply_word(psi, "H", 0))
    g, psi = check(apply_e2(g, 0, 5), psi)
    g, psi = z_measure(g, psi, 0)
    g, psi = check(apply_word(g, 0, "H"), O.apply_word(psi, "H", 0))
    # (b) Y on node 2
    g, psi = check(apply_word(g, 1, "ZSH"), O.apply_word(psi, "ZSH", 1))
    g, psi = check(apply_e1(g, 1), psi)
    g, psi = z_measure(g, psi, 1)
    g, psi = check(apply_word(g, 1, "HS"), O.apply_word(psi, "HS", 1))
    # (c) Z on node 6
    assert g.is_hollow(5) and g.has_loop(5)
    g, psi = check(apply_e1(g, 5), psi)
    g, psi = z_measure(g, psi, 5)
    assert g.is_hollow(5) and not g.neighbors(5)
    return all(checks), len(checks)


def test_criterion_2_cluster_2x3_sequence(report):
    t0 = time.perf_counter()
    ok_pipe, n_pipe, why = _replay_pipeline(cluster2x3(), ["XIIIII", "IYIIII", "IIIIIZ"])
    ok_hand, n_hand = _replay_by_hand()
    dt = time.perf_counter() - t0
    ok = ok_pipe and ok_hand and dt < 0.1
    detail = f"{n_pipe} pipeline steps and {n_hand} hand-chosen steps oracle-equal, {dt * 1e3:.1f} ms {why}"
    assert report(2, ok, detail.strip())


@pytest.mark.slow
def test_criterion_3_exhaustive_sweep(report):
    results = [V.exhaustive_measurement_sweep(n) for n in (2, 3)]
    secs = sum(r.seconds for r in results)
    ok = all(r.ok for r in results) and secs < 60
    detail = ", ".join(f"{r.name}: {r.cases} cases {r.failures} failures" for r in results)
    first = next((r.first for r in results if r.first), None)
    if first:
        detail += " " + json.dumps(first.to_dict())
    assert report(3, ok, f"{detail}, {secs:.1f} s")


@pytest.mark.slow
def test_criterion_4_random_sweep(report):
    r = V.random_measurement_sweep(10_000, 8, seed=20240)
    ok = r.ok and r.seconds < 120
    detail = f"{r.cases} cases {r.failures} failures, {r.seconds:.1f} s"
    if r.first:
        detail += " " + json.dumps(r.first.to_dict())
    assert report(4, ok, detail)


def test_criterion_5_rule_suite(report):
    results = [V.exhaustive_rule_sweep(n) for n in (1, 2, 3)]
    results.append(V.random_rule_sweep(2_000, 8, seed=7))
    ok = all(r.ok for r in results)
    detail = ", ".join(f"{r.name}: {r.cases} cases" for r in results)
    for r in results:
        if r.first:
            detail += " " + json.dumps(r.first.to_dict())
            break
    assert report(5, ok, detail)


def test_criterion_6_throughput(report):
    rng = np.random.default_rng(0)
    g = V.random_sparse_graph(1000, 8, rng)
    nodes = rng.integers(0, 1000, size=10_000).tolist()
    policy = OutcomePolicy.sample(rng)
    t0 = time.perf_counter()
    for j in nodes:
        g = measure_single(g, j, "Z", policy).post_graph
    dt = time.perf_counter() - t0
    g.check_invariants()
    assert report(6, dt < 1.0, f"10000 Z measurements on 1000 nodes in {dt:.3f} s")
