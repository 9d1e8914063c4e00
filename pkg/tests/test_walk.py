import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from walklang import (
    CoinAssignment,
    NonUnitaryError,
    PortGraph,
    WalkState,
    dense_step_matrix,
    evolve,
    inner_product,
    step,
    vertex_probability,
)
from walklang import coins
from walklang.walk import state_from_text, state_to_text

from helpers import graph_from_edges, haar_unitary, hadamard_line_coins, line_graph


def single_edge():
    g = PortGraph()
    g.add_vertices(2)
    g.connect(0, 1)
    return g.freeze()


def test_walk_state_checks_shape_and_norm():
    g = single_edge()
    with pytest.raises(ValueError, match="ports"):
        WalkState(g, np.array([1.0, 0.0, 0.0]))
    with pytest.raises(ValueError, match="normalised"):
        WalkState(g, np.array([1.0, 1.0]))
    s = WalkState.from_basis(g, 1, 0)
    assert s.amplitude(1, 0) == 1.0


def test_coin_assignment_validates_dimensions():
    g = single_edge()
    with pytest.raises(ValueError, match="shape"):
        CoinAssignment(g, [np.eye(2), np.eye(1)])
    with pytest.raises(NonUnitaryError, match="vertex 1"):
        CoinAssignment(g, [np.eye(1), np.array([[2.0]])])


def test_identity_walk_on_edge_returns_after_two_steps():
    g = single_edge()
    cs = CoinAssignment.by_degree(g, coins.identity)
    s = WalkState.from_basis(g, 0, 0)
    assert np.allclose(step(step(s, cs), cs).amplitudes, s.amplitudes, atol=0)


def test_line_walk_single_step():
    # one Hadamard step from the centre puts probability 1/2 on each neighbour
    g = line_graph(7)
    cs = hadamard_line_coins(g)
    s1 = step(WalkState.from_basis(g, 3, 1), cs)
    assert vertex_probability(s1, 2) == pytest.approx(0.5, abs=1e-15)
    assert vertex_probability(s1, 4) == pytest.approx(0.5, abs=1e-15)


def test_line_walk_two_steps_frozen_distribution():
    # computed against the dense step matrix for this engine's port layout
    g = line_graph(7)
    cs = hadamard_line_coins(g)
    s2 = evolve(WalkState.from_basis(g, 3, 1), cs, 2)
    probs = {x - 3: vertex_probability(s2, x) for x in g.vertices}
    assert probs[-2] == pytest.approx(0.25, abs=1e-12)
    assert probs[0] == pytest.approx(0.5, abs=1e-12)
    assert probs[2] == pytest.approx(0.25, abs=1e-12)
    assert probs[-1] == pytest.approx(0.0, abs=1e-12)
    u = dense_step_matrix(g, cs)
    expected = np.linalg.matrix_power(u, 2) @ WalkState.from_basis(g, 3, 1).amplitudes
    assert np.max(np.abs(s2.amplitudes - expected)) < 1e-12


def test_step_rejects_foreign_coins():
    g = single_edge()
    other = line_graph(3)
    cs = CoinAssignment.by_degree(other, coins.identity)
    with pytest.raises(ValueError, match="different graph"):
        step(WalkState.from_basis(g, 0, 0), cs)


def test_evolve_zero_steps_is_identity():
    g = single_edge()
    cs = CoinAssignment.by_degree(g, coins.identity)
    s = WalkState.from_basis(g, 0, 0)
    out = evolve(s, cs, 0)
    assert np.array_equal(out.amplitudes, s.amplitudes)
    with pytest.raises(ValueError):
        evolve(s, cs, -1)


def test_vertex_probability_basics():
    g = line_graph(3)
    s = WalkState.from_basis(g, 1, 1)
    assert vertex_probability(s, 1) == 1.0
    assert vertex_probability(s, 0) == 0.0
    total = sum(vertex_probability(s, v) for v in g.vertices)
    assert total == pytest.approx(1.0, abs=1e-15)


def test_inner_product_basics():
    g = single_edge()
    a = WalkState.from_basis(g, 0, 0)
    b = WalkState.from_basis(g, 1, 0)
    assert inner_product(a, a) == pytest.approx(1.0)
    assert inner_product(a, b) == 0.0
    h = coins.hadamard()
    c = WalkState(g, h @ np.array([1, 0]))
    d = WalkState(g, h @ np.array([0, 1]))
    assert abs(inner_product(c, d)) < 1e-15


def test_dense_matrix_single_edge_identity_coins_is_swap():
    g = single_edge()
    cs = CoinAssignment.by_degree(g, coins.identity)
    u = dense_step_matrix(g, cs)
    assert np.array_equal(u, np.array([[0, 1], [1, 0]], dtype=complex))


def test_dense_matrix_five_vertex_line():
    g = line_graph(5)
    cs = hadamard_line_coins(g)
    u = dense_step_matrix(g, cs)
    assert u.shape == (8, 8)
    assert np.max(np.abs(u.conj().T @ u - np.eye(8))) < 1e-12


def test_dense_matrix_respects_port_limit():
    g = line_graph(5)
    cs = hadamard_line_coins(g)
    with pytest.raises(ValueError, match="limited"):
        dense_step_matrix(g, cs, max_ports=4)


graph_cases = st.integers(2, 6).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10),
        st.integers(0, 2**32 - 1),
        st.integers(1, 8),
    )
)


@given(graph_cases)
@settings(max_examples=60, deadline=None)
def test_evolve_matches_dense_oracle(case):
    n, edges, seed, steps = case
    g = graph_from_edges(n, edges)
    rng = np.random.default_rng(seed)
    cs = CoinAssignment(g, [haar_unitary(rng, g.degree(v)) for v in g.vertices])
    u = dense_step_matrix(g, cs)
    assert np.max(np.abs(u.conj().T @ u - np.eye(g.num_ports))) < 1e-12
    amps = rng.normal(size=g.num_ports) + 1j * rng.normal(size=g.num_ports)
    amps /= np.linalg.norm(amps)
    s = WalkState(g, amps)
    got = evolve(s, cs, steps)
    expected = np.linalg.matrix_power(u, steps) @ amps
    assert np.max(np.abs(got.amplitudes - expected)) < 1e-12
    assert abs(got.norm() - 1.0) < 1e-12


def test_norm_conserved_over_long_run():
    g = line_graph(9)
    cs = hadamard_line_coins(g)
    s = evolve(WalkState.from_basis(g, 4, 0), cs, 1000)
    assert abs(s.norm() - 1.0) < 1e-12


def test_coin_serialization_round_trip():
    g = line_graph(4)
    cs = hadamard_line_coins(g)
    text = cs.to_text()
    back = CoinAssignment.from_text(g, text)
    for a, b in zip(cs.matrices, back.matrices):
        assert np.array_equal(a, b)
    assert back.to_text() == text


def test_coin_parse_errors_have_line_numbers():
    g = single_edge()
    with pytest.raises(ValueError, match="line 1"):
        CoinAssignment.from_text(g, "x 0 1\n1.0,0.0\n")
    with pytest.raises(ValueError, match="line 2"):
        CoinAssignment.from_text(g, "v 0 1\nnope\nv 1 1\n1.0,0.0\n")
    with pytest.raises(ValueError, match="missing"):
        CoinAssignment.from_text(g, "v 0 1\n1.0,0.0\n")


def test_state_serialization_round_trip():
    g = line_graph(3)
    cs = hadamard_line_coins(g)
    s = evolve(WalkState.from_basis(g, 1, 0), cs, 2)
    back = state_from_text(g, state_to_text(s))
    assert np.array_equal(back.amplitudes, s.amplitudes)
    with pytest.raises(ValueError, match="line 1"):
        state_from_text(g, "broken\n")
