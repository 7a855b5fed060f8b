import numpy as np
import pytest
from numpy.linalg import LinAlgError
from numpy.testing import assert_allclose

import bakerlab as bl

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


class TestProducts:
    def test_matmul_matches_index_loops(self):
        rng = np.random.default_rng(11)
        a = random_complex(rng, (3, 4))
        b = random_complex(rng, (4, 2))
        expected = np.zeros((3, 2), dtype=complex)
        for i in range(3):
            for j in range(2):
                for k in range(4):
                    expected[i, j] += a[i, k] * b[k, j]
        assert_allclose(bl.matmul(a, b), expected, atol=1e-13)

    def test_matmul_rejects_shape_mismatch(self):
        with pytest.raises(ValueError, match="incompatible"):
            bl.matmul(np.eye(3), np.eye(4))

    def test_matmul_rejects_vectors(self):
        with pytest.raises(ValueError, match="matrix"):
            bl.matmul(np.ones(3), np.eye(3))

    def test_dagger(self):
        rng = np.random.default_rng(12)
        a = random_complex(rng, (3, 5))
        assert_allclose(bl.dagger(a), a.conj().T)
        assert_allclose(bl.dagger(bl.dagger(a)), a)

    def test_kron_matches_index_definition(self):
        rng = np.random.default_rng(13)
        a = random_complex(rng, (2, 2))
        b = random_complex(rng, (3, 3))
        k = bl.kron(a, b)
        for i in range(2):
            for j in range(2):
                for r in range(3):
                    for c in range(3):
                        assert k[i * 3 + r, j * 3 + c] == pytest.approx(a[i, j] * b[r, c])

    def test_kron_left_factor_is_most_significant(self):
        # X on the left factor sends block 0 to block 1
        k = bl.kron(PAULI_X, np.eye(2))
        psi = np.array([1.0, 2.0, 0.0, 0.0], dtype=complex)
        assert_allclose(k @ psi, [0.0, 0.0, 1.0, 2.0])


class TestUnitarity:
    def test_identity_is_unitary(self):
        assert bl.is_unitary(np.eye(5))
        assert bl.unitarity_defect(np.eye(5)) == 0.0

    def test_scaled_identity_is_not(self):
        assert not bl.is_unitary(2.0 * np.eye(3))
        with pytest.raises(LinAlgError, match="not unitary"):
            bl.assert_unitary(2.0 * np.eye(3))

    def test_defect_appears_in_message(self):
        with pytest.raises(LinAlgError, match="3.000e"):
            bl.assert_unitary(2.0 * np.eye(3))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError, match="square"):
            bl.unitarity_defect(np.ones((2, 3)))


class TestBipartition:
    def test_dimensions(self):
        part = bl.Bipartition(4, 5)
        assert part.d == 20
        assert part.d_prime == 30
        assert part.swapped() == bl.Bipartition(5, 4)

    @pytest.mark.parametrize("d_a,d_b", [(1, 4), (4, 1), (0, 2), (2, -3)])
    def test_rejects_trivial_subsystems(self, d_a, d_b):
        with pytest.raises(ValueError):
            bl.Bipartition(d_a, d_b)


class TestPartialTrace:
    def test_product_state_reduces_to_its_factor(self):
        rng = np.random.default_rng(21)
        a = random_complex(rng, 3)
        a /= np.linalg.norm(a)
        b = random_complex(rng, 4)
        b /= np.linalg.norm(b)
        psi = np.kron(a, b)
        rho = np.outer(psi, psi.conj())
        part = bl.Bipartition(3, 4)
        assert_allclose(bl.partial_trace(rho, part, "A"), np.outer(a, a.conj()), atol=1e-13)
        assert_allclose(bl.partial_trace(rho, part, "B"), np.outer(b, b.conj()), atol=1e-13)

    def test_bell_state_reduces_to_maximally_mixed(self):
        psi = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2)
        rho = np.outer(psi, psi.conj())
        reduced = bl.partial_trace(rho, bl.Bipartition(2, 2), "A")
        assert_allclose(reduced, np.eye(2) / 2, atol=1e-14)

    @pytest.mark.parametrize("keep", ["A", "B"])
    def test_matches_index_sum_oracle(self, keep):
        rng = np.random.default_rng(22)
        part = bl.Bipartition(2, 3)
        rho = random_complex(rng, (6, 6))  # deliberately not hermitian
        got = bl.partial_trace(rho, part, keep)
        t = rho.reshape(2, 3, 2, 3)
        if keep == "A":
            expected = np.zeros((2, 2), dtype=complex)
            for ja in range(2):
                for ka in range(2):
                    for b in range(3):
                        expected[ja, ka] += t[ja, b, ka, b]
        else:
            expected = np.zeros((3, 3), dtype=complex)
            for jb in range(3):
                for kb in range(3):
                    for a in range(2):
                        expected[jb, kb] += t[a, jb, a, kb]
        assert_allclose(got, expected, atol=1e-13)

    def test_preserves_trace(self):
        rng = np.random.default_rng(23)
        part = bl.Bipartition(3, 5)
        rho = random_complex(rng, (15, 15))
        for keep in ("A", "B"):
            assert np.trace(bl.partial_trace(rho, part, keep)) == pytest.approx(np.trace(rho), abs=1e-12)

    def test_rejects_bad_inputs(self):
        part = bl.Bipartition(2, 3)
        with pytest.raises(ValueError, match="does not match"):
            bl.partial_trace(np.eye(5), part)
        with pytest.raises(ValueError, match="keep"):
            bl.partial_trace(np.eye(6), part, "C")


class TestEigensystem:
    def test_diagonal_unitary(self):
        eig = bl.eigensystem(np.diag([1.0, 1j]))
        assert_allclose(eig.phases, [0.0, np.pi / 2], atol=1e-14)
        assert_allclose(np.abs(eig.vectors), np.eye(2), atol=1e-14)
        assert_allclose(eig.eigenvalues(), [1.0, 1j], atol=1e-14)

    def test_pauli_x_eigenvectors(self):
        eig = bl.eigensystem(PAULI_X)
        assert_allclose(eig.phases, [0.0, np.pi], atol=1e-12)
        plus = np.array([1.0, 1.0]) / np.sqrt(2)
        minus = np.array([1.0, -1.0]) / np.sqrt(2)
        # eigenvectors are defined up to a phase
        assert abs(np.vdot(plus, eig.vectors[:, 0])) == pytest.approx(1.0, abs=1e-12)
        assert abs(np.vdot(minus, eig.vectors[:, 1])) == pytest.approx(1.0, abs=1e-12)

    def test_phases_sorted_and_in_range(self):
        u = bl.sample_cue(32, bl.RngStream(101))
        eig = bl.eigensystem(u)
        assert (np.diff(eig.phases) >= 0).all()
        assert (eig.phases >= 0).all() and (eig.phases < 2 * np.pi).all()

    @pytest.mark.parametrize("d", [8, 16, 32])
    def test_reconstructs_random_unitaries(self, d):
        u = bl.sample_cue(d, bl.RngStream(55, d))
        eig = bl.eigensystem(u)
        diag = bl.eigensystem_diagnostics(u, eig)
        assert diag["max_residual"] < 1e-8 * np.sqrt(d)
        assert diag["orthonormality_defect"] < 1e-8
        assert diag["reconstruction_error"] < 1e-8 * d

    def test_fully_degenerate_spectrum_stays_orthonormal(self):
        eig = bl.eigensystem(np.eye(4))
        assert_allclose(eig.phases, np.zeros(4), atol=1e-14)
        gram = eig.vectors.conj().T @ eig.vectors
        assert_allclose(gram, np.eye(4), atol=1e-10)

    def test_near_degenerate_cluster_polished(self):
        w = bl.sample_cue(6, bl.RngStream(77))
        lam = np.exp(1j * np.array([0.0, 1e-10, 1e-10, 1.0, 2.0, 3.0]))
        u = (w * lam) @ w.conj().T
        eig = bl.eigensystem(u)
        gram = eig.vectors.conj().T @ eig.vectors
        assert_allclose(gram, np.eye(6), atol=1e-10)

    def test_cluster_wrapping_through_zero(self):
        w = bl.sample_cue(4, bl.RngStream(78))
        lam = np.exp(1j * np.array([2 * np.pi - 2e-9, 1e-9, 1.0, 4.0]))
        u = (w * lam) @ w.conj().T
        eig = bl.eigensystem(u)
        gram = eig.vectors.conj().T @ eig.vectors
        assert_allclose(gram, np.eye(4), atol=1e-10)

    def test_rejects_non_unitary(self):
        with pytest.raises(LinAlgError, match="not unitary"):
            bl.eigensystem(np.diag([1.0, 0.5]))

    def test_rejects_nan(self):
        bad = np.full((3, 3), np.nan, dtype=complex)
        with pytest.raises(LinAlgError):
            bl.eigensystem(bad)

    def test_vectors_are_immutable(self):
        eig = bl.eigensystem(np.eye(3))
        with pytest.raises(ValueError):
            eig.vectors[0, 0] = 5.0
