import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabgraph import PauliProduct, StabilizerGraph, classify, simplify
from stabgraph import oracle as O
from stabgraph.errors import ChosenNotEligible, LengthMismatch, TooManyQubits
from stabgraph.verify import all_graphs

from conftest import graphs

R = 1 / np.sqrt(2)


class TestGraphToState:
    def test_single_solid(self):
        np.testing.assert_allclose(O.graph_to_state(StabilizerGraph(1)), [R, R], atol=1e-12)

    def test_single_hollow(self):
        np.testing.assert_allclose(O.graph_to_state(StabilizerGraph(1, hollow=[0])), [1, 0], atol=1e-12)

    def test_edge(self):
        g = StabilizerGraph(2, [(0, 1)])
        np.testing.assert_allclose(O.graph_to_state(g), np.array([1, 1, 1, -1]) / 2, atol=1e-12)

    def test_node_zero_is_most_significant(self):
        # |0> on node 0 (hollow), |+> on node 1: amplitude only on indices 0b00, 0b01
        psi = O.graph_to_state(StabilizerGraph(2, hollow=[0]))
        np.testing.assert_allclose(psi, [R, R, 0, 0], atol=1e-12)

    def test_loop_then_hollow(self):
        # H S H|0> = H S |+>
        psi = O.graph_to_state(StabilizerGraph(1, hollow=[0], loops=[0]))
        expected = O.GATE_MATRICES["H"] @ O.GATE_MATRICES["S"] @ np.array([R, R])
        np.testing.assert_allclose(psi, expected, atol=1e-12)

    def test_too_many_qubits(self):
        with pytest.raises(TooManyQubits):
            O.graph_to_state(StabilizerGraph(15))

    @given(graphs(max_n=8))
    @settings(max_examples=60)
    def test_unit_norm(self, g):
        assert abs(np.linalg.norm(O.graph_to_state(g)) - 1) < 1e-12

    def test_tensordot_path_matches_matrix_path(self):
        # n = 7 uses the reshaped path, n <= 6 the cached full operators
        rng = np.random.default_rng(5)
        psi = rng.normal(size=128) + 1j * rng.normal(size=128)
        for letter in "XYZHS":
            for j in (0, 3, 6):
                got = O.apply_gate(psi, letter, j)
                full = np.eye(1)
                for q in range(7):
                    full = np.kron(full, O.GATE_MATRICES[letter] if q == j else np.eye(2))
                np.testing.assert_allclose(got, full @ psi, atol=1e-12)


class TestApplyPauli:
    def test_identity(self):
        psi = O.graph_to_state(StabilizerGraph(2, [(0, 1)], loops=[1]))
        np.testing.assert_allclose(O.apply_pauli(psi, PauliProduct("II")), psi)

    def test_z_on_plus(self):
        np.testing.assert_allclose(O.apply_pauli(np.array([R, R], dtype=complex), PauliProduct("Z")), [R, -R])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            O.apply_pauli(np.array([1, 0], dtype=complex), PauliProduct("ZZ"))


def _phase_identity_holds(g, measured):
    """Z-product on a simplified graph equals (-1)^b U (prod X on solid_even)|0>, phase included."""
    cls = classify(g, measured)
    m = PauliProduct.from_support(g.n, measured)
    lhs = O.apply_pauli(O.graph_to_state(g), m)
    start = O.basis_state(g.n)
    for j in cls.solid_even:
        start = O.apply_gate(start, "X", j)
    rhs = (-1) ** cls.b * O.prep_circuit(g, start)
    return np.allclose(lhs, rhs, atol=1e-12)


class TestPhaseIdentity:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_exhaustive_simplified(self, n):
        checked = 0
        for g in all_graphs(n):
            for r in range(1, n + 1):
                for measured in itertools.combinations(range(n), r):
                    g2 = simplify(g, measured)
                    assert _phase_identity_holds(g2, measured)
                    checked += 1
        assert checked == 2 ** (n * (n - 1) // 2) * 8**n * (2**n - 1)

    @given(graphs(min_n=4, max_n=4), st.data())
    @settings(max_examples=200)
    def test_random_n4(self, g, data):
        measured = data.draw(st.lists(st.integers(0, 3), min_size=1, unique=True))
        assert _phase_identity_holds(simplify(g, measured), measured)


class TestProject:
    def test_z_on_plus(self):
        prob, post = O.project(np.array([R, R], dtype=complex), PauliProduct("Z"), 0)
        assert prob == pytest.approx(0.5, abs=1e-12)
        np.testing.assert_allclose(post, [1, 0], atol=1e-12)

    def test_zero_probability(self):
        prob, post = O.project(np.array([1, 0], dtype=complex), PauliProduct("Z"), 1)
        assert prob == pytest.approx(0, abs=1e-12) and post is None

    def test_identity_rejected(self):
        with pytest.raises(ValueError):
            O.project(np.array([1, 0], dtype=complex), PauliProduct("I"), 0)

    @given(graphs(max_n=5), st.data())
    @settings(max_examples=100)
    def test_probabilities(self, g, data):
        letters = data.draw(st.text("IXYZ", min_size=g.n, max_size=g.n).filter(lambda s: set(s) != {"I"}))
        m = PauliProduct(letters)
        psi = O.graph_to_state(g)
        p0, post0 = O.project(psi, m, 0)
        p1, post1 = O.project(psi, m, 1)
        assert abs(p0 + p1 - 1) < 1e-12
        assert min(abs(p0), abs(p0 - 0.5), abs(p0 - 1)) < 1e-12
        for a, post in ((0, post0), (1, post1)):
            if post is not None:
                assert abs(O.project(post, m, a)[0] - 1) < 1e-9


class TestCatState:
    def test_single_member_matches_projection(self):
        g = StabilizerGraph(3, [(0, 1), (1, 2)], loops=[2])
        cls = classify(g, [1])
        cat = O.cat_state_post(g, cls.solid_even, 1, 0)
        _, post = O.project(O.graph_to_state(g), PauliProduct("IZI"), 0)
        assert O.equal_up_to_phase(cat, post)

    def test_parity_flips_cat_sign(self):
        # two hollow isolated nodes: the preparation circuit is the identity
        g = StabilizerGraph(2, hollow=[0, 1])
        np.testing.assert_allclose(O.cat_state_post(g, {0, 1}, 0, 1), [R, 0, 0, -R], atol=1e-12)
        np.testing.assert_allclose(O.cat_state_post(g, {0, 1}, 0, 0), [R, 0, 0, R], atol=1e-12)

    def test_chosen_must_be_member(self):
        with pytest.raises(ChosenNotEligible):
            O.cat_state_post(StabilizerGraph(2), {1}, 0, 0)


class TestEqualUpToPhase:
    def test_self(self):
        s = np.array([0.6, 0.8j])
        assert O.equal_up_to_phase(s, s)

    def test_minus(self):
        s = np.array([0.6, 0.8j])
        assert O.equal_up_to_phase(s, -s)
        assert O.equal_up_to_phase(s, 1j * s)

    def test_orthogonal(self):
        assert not O.equal_up_to_phase(np.array([1, 0]), np.array([0, 1]))

    def test_relative_phase_differs(self):
        assert not O.equal_up_to_phase(np.array([R, R]), np.array([R, -R]))

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            O.equal_up_to_phase(np.array([1, 0]), np.array([1, 0, 0, 0]))
