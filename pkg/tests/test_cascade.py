import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from picsweep import models, reference
from picsweep.cascade import compose, connect, innerconnect, internal_amplitudes, reduce_circuit
from picsweep.circuit import Subcircuit, flatten
from picsweep.errors import GridMismatch, SingularConnection
from picsweep.simulate import SweepSpec, direct_solve_matrix
from picsweep.smatrix import FrequencyGrid, SMatrix

import properties
from randcircuits import random_circuit

G1 = FrequencyGrid([1.93e14])
GRID = SweepSpec(1500e-9, 1600e-9, 101).grid()


def const(m, grid=G1, ports=None):
    m = np.asarray(m, dtype=complex)
    ports = ports or tuple(f"p{i}" for i in range(m.shape[0]))
    return SMatrix(grid, ports, np.broadcast_to(m, (len(grid),) + m.shape))


def growth_by_loops(m, k, l):
    """Element-by-element evaluation of the growth formula, no vectorization."""
    n = m.shape[0]
    d = 1 - m[k, l] - m[l, k] + m[k, l] * m[l, k] - m[k, k] * m[l, l]
    keep = [i for i in range(n) if i not in (k, l)]
    out = np.zeros((len(keep), len(keep)), complex)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            out[a, b] = m[i, j] + (
                m[i, l] * m[k, j] * (1 - m[l, k])
                + m[i, l] * m[k, k] * m[l, j]
                + m[i, k] * m[l, j] * (1 - m[k, l])
                + m[i, k] * m[l, l] * m[k, j]
            ) / d
    return out


def test_splice_of_two_ideal_throughs():
    m = np.zeros((4, 4))
    m[0, 1] = m[1, 0] = m[2, 3] = m[3, 2] = 1
    s = innerconnect(const(m), 1, 2)
    assert s.ports == ("p0", "p3")
    assert np.array_equal(s.data[0], [[0, 1], [1, 0]])


def test_back_to_back_y_branches():
    y = models.y_branch().evaluate(G1)
    s = connect(y, 0, y, 0)
    assert s.ports == ("a.n2", "a.n3", "b.n2", "b.n3")
    m = s.data[0]
    assert np.allclose(np.abs(m[2:, :2]), 0.5, atol=1e-15)
    assert np.allclose(np.abs(m[:2, 2:]), 0.5, atol=1e-15)
    assert np.all(m[:2, :2] == 0) and np.all(m[2:, 2:] == 0)

    c = Subcircuit()
    yb = models.y_branch()
    c.add([(yb, "A"), (yb, "B")])
    c.connect("A", "n1", "B", "n1")
    oracle = direct_solve_matrix(c, G1)
    assert np.max(np.abs(oracle.data - s.data)) < 1e-15


def test_perfect_mirror_loop_is_singular():
    s = const(np.eye(2))
    with pytest.raises(SingularConnection) as info:
        innerconnect(s, 0, 1)
    assert info.value.frequency == pytest.approx(1.93e14)


def test_innerconnect_index_errors():
    s = const(np.eye(3) * 0.1)
    with pytest.raises(IndexError):
        innerconnect(s, 0, 3)
    with pytest.raises(ValueError):
        innerconnect(s, 1, 1)


@given(st.integers(0, 2**32 - 1), st.integers(3, 6))
def test_vectorized_growth_matches_loop_evaluation(seed, n):
    rng = np.random.default_rng(seed)
    m = 0.5 * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / n
    k, l = rng.choice(n, 2, replace=False)
    got = innerconnect(const(m), int(k), int(l)).data[0]
    assert np.allclose(got, growth_by_loops(m, k, l), rtol=0, atol=1e-14)


def test_survivors_keep_order_and_labels():
    s = const(np.full((5, 5), 0.1), ports=("a", "b", "c", "d", "e"))
    assert innerconnect(s, 3, 1).ports == ("a", "c", "e")


def test_compose_block_diagonal():
    a = models.waveguide(1e-6).evaluate(GRID)
    b = models.y_branch().evaluate(GRID)
    s = compose(a, b)
    assert s.n_ports == 5
    assert np.all(s.data[:, :2, 2:] == 0) and np.all(s.data[:, 2:, :2] == 0)
    assert np.array_equal(s.data[:, :2, :2], a.data)
    assert np.array_equal(s.data[:, 2:, 2:], b.data)


def test_compose_with_empty_network_is_identity():
    a = models.directional_coupler(0.3).evaluate(GRID)
    empty = SMatrix(GRID, (), np.zeros((len(GRID), 0, 0)))
    assert np.array_equal(compose(a, empty).data, a.data)
    assert compose(a, empty).ports == a.ports


def test_compose_is_associative():
    a = models.waveguide(3e-6).evaluate(GRID).relabel(("a1", "a2"))
    b = models.y_branch().evaluate(GRID).relabel(("b1", "b2", "b3"))
    c = models.half_ring(5e-6).evaluate(GRID).relabel(("c1", "c2", "c3", "c4"))
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    assert left.ports == right.ports
    assert np.array_equal(left.data, right.data)


def test_compose_grid_mismatch():
    a = models.waveguide(1e-6).evaluate(GRID)
    b = models.waveguide(1e-6).evaluate(G1)
    with pytest.raises(GridMismatch):
        compose(a, b)
    with pytest.raises(GridMismatch):
        connect(a, 1, b, 0)


def test_connected_waveguides_add_phase_and_multiply_magnitude():
    a = models.waveguide(10e-6, loss=500.0).evaluate(GRID)
    b = models.waveguide(25e-6, loss=100.0).evaluate(GRID)
    s = connect(a, 1, b, 0)
    ta, tb = a.data[:, 1, 0], b.data[:, 1, 0]
    assert np.allclose(s.data[:, 1, 0], ta * tb, rtol=0, atol=1e-15)
    assert np.allclose(np.abs(s.data[:, 1, 0]), np.abs(ta) * np.abs(tb), rtol=0, atol=1e-15)


def test_y_branch_stem_to_waveguide():
    y = models.y_branch().evaluate(GRID)
    wg = models.waveguide(40e-6).evaluate(GRID)
    s = connect(y, 0, wg, 0)
    assert s.ports == ("a.n2", "n3", "b.n2")
    expected = wg.data[:, 1, 0] / math.sqrt(2)
    assert np.allclose(s.data[:, 2, 0], expected, rtol=0, atol=1e-15)
    assert np.allclose(s.data[:, 2, 1], expected, rtol=0, atol=1e-15)


def test_connect_port_count_arithmetic():
    a = models.half_ring(5e-6).evaluate(GRID)
    b = models.y_branch().evaluate(GRID)
    assert connect(a, 2, b, 1).n_ports == 4 + 3 - 2
    assert innerconnect(a, 2, 3).n_ports == 2


# -- internal amplitudes ------------------------------------------------------------


def pair_of_y_branches():
    y = models.y_branch().evaluate(G1)
    return compose(y, y)  # ports: A stem, A arms, B stem, B arms


def test_internal_amplitudes_zero_excitation():
    s = pair_of_y_branches()
    assert internal_amplitudes(s, 0, 3, np.zeros(4), 0) == (0, 0)


def test_internal_stem_amplitude_of_y_branch_pair():
    s = pair_of_y_branches()
    a_k, a_l = internal_amplitudes(s, 0, 3, [1, 0, 0, 0], 0)
    # light entering B's stem is what left A's stem: S_ki a_i with no reflections
    assert a_l == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert a_k == pytest.approx(0, abs=1e-15)


@given(st.integers(0, 2**32 - 1))
def test_internal_amplitudes_are_self_consistent(seed):
    rng = np.random.default_rng(seed)
    c = random_circuit(seed, max_components=3, max_loops=0)
    flat = flatten(c)
    full = None
    for name in flat.elements:
        m = flat.elements[name].model.evaluate(G1)
        full = m if full is None else compose(full, m)
    n = full.n_ports
    if n < 3:
        return
    k, l = (int(x) for x in rng.choice(n, 2, replace=False))
    try:
        reduced = innerconnect(full, k, l)
    except SingularConnection:
        return
    a_ext = rng.normal(size=n - 2) + 1j * rng.normal(size=n - 2)
    a_k, a_l = internal_amplitudes(full, k, l, a_ext, 0)
    keep = [i for i in range(n) if i not in (k, l)]
    a = np.zeros(n, complex)
    a[keep] = a_ext
    a[k], a[l] = a_k, a_l
    b = full.data[0] @ a
    # the joined ports feed each other and the survivors see the reduced network
    assert abs(b[k] - a_l) < 1e-12 and abs(b[l] - a_k) < 1e-12
    assert np.max(np.abs(b[keep] - reduced.data[0] @ a_ext)) < 1e-12


# -- reduce_circuit ------------------------------------------------------------------------


def test_empty_circuit_reduces_to_zero_ports():
    s, pin_map = reduce_circuit(Subcircuit(), G1)
    assert s.n_ports == 0 and pin_map == {}


def test_single_component_circuit():
    c = Subcircuit()
    hr = models.half_ring(8e-6, 0.3)
    c.add([(hr, "hr")])
    s, pin_map = reduce_circuit(c, GRID)
    assert np.array_equal(s.data, hr.evaluate(GRID).data)
    assert pin_map == {"hr.n1": 0, "hr.n2": 1, "hr.n3": 2, "hr.n4": 3}


def test_disconnected_components_are_composed():
    c = Subcircuit()
    c.add([(models.waveguide(1e-6), "a"), (models.terminator(), "t"), (models.waveguide(2e-6), "b")])
    s, _ = reduce_circuit(c, GRID)
    assert s.ports == ("a.n1", "a.n2", "t.n1", "b.n1", "b.n2")
    assert np.all(s.data[:, 0, 3] == 0)


def test_singular_connection_names_the_link():
    mirror = models.model_from_smatrix(SMatrix(GRID, ("p", "q"), np.broadcast_to(np.eye(2), (len(GRID), 2, 2))))
    c = Subcircuit()
    c.add([(mirror, "m"), (models.waveguide(0.0), "wg")])
    c.connect("m", "p", "wg", "n1")
    c.connect("m", "q", "wg", "n2")
    with pytest.raises(SingularConnection) as info:
        reduce_circuit(c, GRID)
    assert info.value.connection == "m.q -- wg.n2"


def test_mzi_fsr_matches_group_index_formula():
    from scipy.signal import find_peaks

    spec = SweepSpec(1500e-9, 1600e-9, 20000)
    s, pin_map = reduce_circuit(flatten(reference.mzi()), spec.grid())
    p = np.abs(s.data[:, pin_map["output.output"], pin_map["input.input"]]) ** 2
    wl = spec.grid().wavelengths
    minima, _ = find_peaks(-p)
    near = minima[np.argsort(np.abs(wl[minima] - 1550e-9))[:2]]
    fsr = abs(wl[near[0]] - wl[near[1]])
    centre = wl[near].mean()
    predicted = centre**2 / (4.2015 * 100e-6)
    assert predicted == pytest.approx(5.72e-9, rel=2e-3)
    assert fsr == pytest.approx(predicted, rel=0.02)


# -- invariants over random circuits ------------------------------------------------------


@given(st.integers(0, 10**9))
def test_reciprocity_is_preserved(seed):
    properties.check_reciprocity(seed)


@given(st.integers(0, 10**9))
def test_passivity_is_preserved(seed):
    properties.check_passivity(seed)


@given(st.integers(0, 10**9))
def test_lossless_circuits_stay_unitary(seed):
    properties.check_lossless_unitarity(seed)


@given(st.integers(0, 10**9))
def test_connection_order_does_not_matter(seed):
    properties.check_connection_order(seed)


@given(st.integers(0, 10**9))
def test_cascade_matches_direct_solve(seed):
    assert properties.oracle_gap(seed) < 1e-10
