import numpy as np
import pytest

from negafont.errors import DomainError
from negafont.ketparse import parse_state
from negafont.negativity import eigvals_hermitian
from negafont.ptranspose import _transposed, decomposition_residual, global_pt, kway_pt, matrix_to_json
from negafont.qstate import density, make_state, random_real_state, random_state

from oracles import GHZ3, TABLE1, TABLE2, W3, brute_gpt, brute_kpt


@pytest.mark.parametrize("n", [2, 3, 4])
def test_transposes_match_loop_oracle(n):
    s = random_state(n, 11 * n)
    for p in range(1, n + 1):
        assert np.abs(global_pt(s, p).mat - brute_gpt(s.amps, n, p)).max() < 1e-15
        for k in range(2, n + 1):
            assert np.abs(kway_pt(s, p, k).mat - brute_kpt(s.amps, n, p, k)).max() < 1e-15


def test_product_state_fixed_point():
    rho = density(make_state(2, [("00", 1)]))
    assert np.array_equal(global_pt(rho, 1).mat, rho.mat)


def test_ghz3_corner_coherences_move():
    g = global_pt(parse_state(GHZ3), 1).mat
    assert g[0b011, 0b100] == pytest.approx(0.5) and g[0b100, 0b011] == pytest.approx(0.5)
    assert g[0, 7] == 0 and g[7, 0] == 0


def test_bell_pair_spectrum():
    w = eigvals_hermitian(global_pt(parse_state("|00>+|11>"), 2).mat)
    assert np.allclose(w, [0.5, 0.5, 0.5, -0.5], atol=1e-12)


def test_kway_examples():
    ghz = parse_state(GHZ3)
    assert np.array_equal(kway_pt(ghz, 1, 3).mat, global_pt(ghz, 1).mat)
    assert np.array_equal(kway_pt(ghz, 1, 2).mat, density(ghz).mat)
    w = parse_state(W3)
    diff = np.argwhere(np.abs(kway_pt(w, 1, 2).mat - density(w).mat) > 1e-15)
    pairs = {tuple(int(v) for v in x) for x in diff}
    # the four coherences pairing 100 with 001 and 010 move to their qubit-1 transposed slots
    moved_out = {(0b100, 0b001), (0b001, 0b100), (0b100, 0b010), (0b010, 0b100)}
    moved_in = {(0b000, 0b101), (0b101, 0b000), (0b000, 0b110), (0b110, 0b000)}
    assert pairs == moved_out | moved_in


def test_kway_domain_errors():
    s = random_state(3, 0)
    with pytest.raises(DomainError):
        kway_pt(s, 1, 1)
    with pytest.raises(DomainError):
        kway_pt(s, 1, 4)
    with pytest.raises(DomainError):
        global_pt(s, 4)


@pytest.mark.parametrize("n", range(2, 6))
def test_hermitian_trace_and_involution(n):
    for seed in range(5):
        s = random_state(n, seed)
        for p in range(1, n + 1):
            g = global_pt(s, p)
            assert np.abs(g.mat - g.mat.conj().T).max() < 1e-12
            assert abs(np.trace(g.mat) - 1) < 1e-12
            # transposing the same qubit again is an exact index permutation
            assert np.array_equal(_transposed(g.mat, n, p), density(s).mat)


@pytest.mark.parametrize("n", range(3, 6))
def test_single_distance_states(n):
    ghz = make_state(n, [("0" * n, 1), ("1" * n, 1)])
    wn = make_state(n, [("0" * m + "1" + "0" * (n - m - 1), 1) for m in range(n)])
    for p in range(1, n + 1):
        assert np.abs(global_pt(ghz, p).mat - kway_pt(ghz, p, n).mat).max() < 1e-14
        assert np.abs(global_pt(wn, p).mat - kway_pt(wn, p, 2).mat).max() < 1e-14


def test_residual_real_representatives_vanish():
    for text in list(TABLE1.values()) + list(TABLE2.values()):
        s = parse_state(text)
        for p in range(1, s.n + 1):
            assert decomposition_residual(s, p)[1] < 1e-12


def test_residual_ghz4_exactly_zero():
    s = make_state(4, [("0000", 1), ("1111", 1)])
    for p in range(1, 5):
        assert decomposition_residual(s, p)[1] == 0


def test_residual_imaginary_distance_one():
    s = make_state(3, [("000", 1), ("100", 1j)])
    r, m = decomposition_residual(s, 1)
    rho = density(s).mat
    assert m == pytest.approx(1.0, abs=1e-12)
    assert r[0, 4] == pytest.approx(rho[4, 0] - rho[0, 4])


def test_residual_real_random_small():
    for n in (2, 3, 4):
        s = random_real_state(n, 5)
        assert max(decomposition_residual(s, p)[1] for p in range(1, n + 1)) < 1e-12


def test_matrix_dump_row_major_pairs():
    out = matrix_to_json(np.array([[1, 2j], [-2j, 0]]))
    assert out == [[1.0, 0.0], [0.0, 2.0], [0.0, -2.0], [0.0, 0.0]]
