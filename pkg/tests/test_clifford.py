import pytest
from hypothesis import given, settings

from stabgraph import StabilizerGraph, apply_h, apply_s, apply_word, apply_z, local_complement_node
from stabgraph import oracle as O
from stabgraph.clifford import apply_gate, inverse_word
from stabgraph.errors import IndexOutOfRange
from stabgraph.verify import all_graphs

from conftest import graph_and_node

RULES = {"H": apply_h, "S": apply_s, "Z": apply_z}


class TestH:
    def test_solid_to_hollow(self):
        assert apply_h(StabilizerGraph(1), 0) == StabilizerGraph(1, hollow=[0])

    def test_keeps_loop_and_sign(self):
        g = StabilizerGraph(2, [(0, 1)], hollow=[0], loops=[0], signs=[0])
        assert apply_h(g, 0) == StabilizerGraph(2, [(0, 1)], loops=[0], signs=[0])

    @given(graph_and_node())
    def test_involution(self, gj):
        g, j = gj
        assert apply_h(apply_h(g, j), j) == g


class TestS:
    def test_solid_gains_loop(self):
        assert apply_s(StabilizerGraph(1), 0) == StabilizerGraph(1, loops=[0])

    def test_twice_on_solid_is_z(self):
        g = StabilizerGraph(2, [(0, 1)], loops=[1])
        assert apply_s(apply_s(g, 0), 0) == apply_z(g, 0)

    def test_hollow_loopless_unsigned(self):
        g = StabilizerGraph(3, [(0, 1), (0, 2)], hollow=[0])
        assert apply_s(g, 0) == StabilizerGraph(3, [(0, 1), (0, 2), (1, 2)], hollow=[0], loops=[1, 2])

    def test_hollow_loopless_signed_flips_neighbour_signs(self):
        g = StabilizerGraph(3, [(0, 1), (0, 2)], hollow=[0], signs=[0], loops=[2])
        # node 2's loop advances into a sign, then the sign flip removes it again
        assert apply_s(g, 0) == StabilizerGraph(3, [(0, 1), (0, 2), (1, 2)], hollow=[0], loops=[1], signs=[0, 1])

    def test_hollow_looped_turns_solid(self):
        g = StabilizerGraph(2, [(0, 1)], hollow=[0], loops=[0])
        out = apply_s(g, 0)
        assert not out.is_hollow(0) and not out.has_loop(0)
        assert out.has_loop(1) and out.is_signed(1)

    @given(graph_and_node())
    def test_local_complementation_keeps_neighbourhood(self, gj):
        # the neighbour set used by the hollow-node rules is the same before
        # and after complementing at the node
        g, j = gj
        assert local_complement_node(g, j).neighbors(j) == g.neighbors(j)

    @given(graph_and_node())
    def test_adjacency_only_changes_on_hollow(self, gj):
        g, j = gj
        out = apply_s(g, j)
        if g.is_hollow(j):
            assert out.edges == local_complement_node(g, j).edges
        else:
            assert out.edges == g.edges


class TestZ:
    def test_solid(self):
        assert apply_z(StabilizerGraph(1), 0) == StabilizerGraph(1, signs=[0])

    def test_hollow_loopless(self):
        g = StabilizerGraph(3, [(0, 1), (0, 2)], hollow=[0])
        assert apply_z(g, 0) == StabilizerGraph(3, [(0, 1), (0, 2)], hollow=[0], signs=[1, 2])

    def test_hollow_looped_isolated(self):
        g = StabilizerGraph(1, hollow=[0], loops=[0])
        assert apply_z(g, 0) == StabilizerGraph(1, hollow=[0], loops=[0], signs=[0])

    @given(graph_and_node())
    def test_never_touches_edges(self, gj):
        g, j = gj
        assert apply_z(g, j).edges == g.edges


class TestWords:
    def test_s_dagger(self):
        g = apply_word(StabilizerGraph(1), 0, "ZS")
        assert g == StabilizerGraph(1, loops=[0], signs=[0])
        sdg = O.GATE_MATRICES["S"].conj().T
        assert O.equal_up_to_phase(O.graph_to_state(g), sdg @ O.graph_to_state(StabilizerGraph(1)))

    @given(graph_and_node())
    def test_empty_and_hh(self, gj):
        g, j = gj
        assert apply_word(g, j, "") == g
        assert apply_word(g, j, "HH") == g

    def test_bad_letter(self):
        with pytest.raises(ValueError):
            apply_word(StabilizerGraph(1), 0, "HX")

    def test_index(self):
        with pytest.raises(IndexOutOfRange):
            apply_h(StabilizerGraph(1), 1)

    def test_apply_gate(self):
        assert apply_gate(StabilizerGraph(1), "H", 0) == apply_h(StabilizerGraph(1), 0)
        with pytest.raises(ValueError):
            apply_gate(StabilizerGraph(1), "HS", 0)

    @pytest.mark.parametrize("word", ["S", "HS", "ZSH", "SSH"])
    def test_inverse_word(self, word):
        g = StabilizerGraph(3, [(0, 1), (1, 2)], hollow=[1], loops=[0])
        for j in range(3):
            back = apply_word(apply_word(g, j, word), j, inverse_word(word))
            assert O.equal_up_to_phase(O.graph_to_state(back), O.graph_to_state(g))


@pytest.mark.parametrize("letter", "HSZ")
@pytest.mark.parametrize("n", [1, 2, 3])
def test_rules_match_dense_gates_exhaustive(letter, n):
    rule = RULES[letter]
    for g in all_graphs(n):
        psi = O.graph_to_state(g)
        for j in range(n):
            out = rule(g, j)
            out.check_invariants()
            assert O.equal_up_to_phase(O.graph_to_state(out), O.apply_gate(psi, letter, j)), (g, j)


@given(graph_and_node(min_n=4, max_n=8))
@settings(max_examples=150)
def test_rules_match_dense_gates_random(gj):
    g, j = gj
    psi = O.graph_to_state(g)
    for letter, rule in RULES.items():
        assert O.equal_up_to_phase(O.graph_to_state(rule(g, j)), O.apply_gate(psi, letter, j))


@given(graph_and_node(max_n=6))
def test_z_squared_and_s_fourth(gj):
    g, j = gj
    psi = O.graph_to_state(g)
    assert O.equal_up_to_phase(O.graph_to_state(apply_z(apply_z(g, j), j)), psi)
    assert O.equal_up_to_phase(O.graph_to_state(apply_word(g, j, "SSSS")), psi)
