import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from discord_dyn.errors import DimensionMismatch, NegativeEigenvalue, NonHermitian
from discord_dyn.linalg import (
    QUBIT_QUTRIT, BipartiteIndex, hermitian_eigen, partial_trace, partial_transpose,
    tensor_product, von_neumann_entropy,
)
from discord_dyn.states import family_state, random_density

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def random_unitary(rng, n):
    _, v, _ = hermitian_eigen(random_hermitian(rng, n))
    return v


class TestHermitianEigen:
    def test_identity(self):
        w = hermitian_eigen(np.eye(6)).eigenvalues
        np.testing.assert_array_equal(w, np.ones(6))

    def test_pauli_x(self):
        w = hermitian_eigen([[0, 1], [1, 0]]).eigenvalues
        np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-15)

    def test_ascending(self, rng):
        w = hermitian_eigen(random_hermitian(rng, 6)).eigenvalues
        assert np.all(np.diff(w) >= 0)

    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_residuals_1000(self, n):
        rng = np.random.default_rng(n)
        worst_rec = worst_orth = worst_tr = 0.0
        for _ in range(1000):
            h = random_hermitian(rng, n)
            w, v, _ = hermitian_eigen(h)
            worst_rec = max(worst_rec, np.abs(v @ np.diag(w) @ v.conj().T - h).max())
            worst_orth = max(worst_orth, np.abs(v.conj().T @ v - np.eye(n)).max())
            worst_tr = max(worst_tr, abs(w.sum() - np.trace(h).real))
        assert worst_rec <= 1e-10
        assert worst_orth <= 1e-10
        assert worst_tr <= 1e-10

    def test_non_hermitian(self):
        with pytest.raises(NonHermitian):
            hermitian_eigen([[0, 1], [0, 0]])

    def test_not_square(self):
        with pytest.raises(DimensionMismatch):
            hermitian_eigen(np.zeros((2, 3)))

    def test_degenerate_complex(self):
        # two-fold degenerate spectrum with complex coherences
        rng = np.random.default_rng(7)
        u = random_unitary(rng, 4)
        h = u @ np.diag([1.0, 1.0, -2.0, 3.0]) @ u.conj().T
        w = hermitian_eigen(h).eigenvalues
        np.testing.assert_allclose(w, [-2.0, 1.0, 1.0, 3.0], atol=1e-12)


class TestPartialTrace:
    def test_product_state(self, rng):
        ra, rb = random_density(rng, 2), random_density(rng, 3)
        rho = np.kron(ra, rb)
        np.testing.assert_allclose(partial_trace(rho, QUBIT_QUTRIT, "A"), ra, atol=1e-12)
        np.testing.assert_allclose(partial_trace(rho, QUBIT_QUTRIT, "B"), rb, atol=1e-12)

    def test_maximally_mixed(self):
        rho = np.eye(6) / 6
        np.testing.assert_allclose(partial_trace(rho, keep="A"), np.eye(2) / 2, atol=1e-15)
        np.testing.assert_allclose(partial_trace(rho, keep="B"), np.eye(3) / 3, atol=1e-15)

    def test_family_qubit_marginal(self):
        p = 0.15
        # each qubit index carries p/2 + p/2 + (1-2p)/2
        expected = p / 2 + p / 2 + (1 - 2 * p) / 2
        ra = partial_trace(family_state(p).matrix, keep="A")
        np.testing.assert_allclose(np.diag(ra).real, [expected, expected], atol=1e-15)
        assert expected == pytest.approx(0.5)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            partial_trace(np.eye(4), QUBIT_QUTRIT, "A")

    @given(seeds)
    @settings(max_examples=50, deadline=None)
    def test_trace_preserved(self, seed):
        rho = random_density(np.random.default_rng(seed), 6)
        for keep in ("A", "B"):
            assert abs(np.trace(partial_trace(rho, keep=keep)) - 1) <= 1e-12


class TestPartialTranspose:
    def test_diagonal_unchanged(self, rng):
        d = np.diag(rng.random(6)).astype(complex)
        np.testing.assert_array_equal(partial_transpose(d), d)

    def test_involution(self, rng):
        m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        np.testing.assert_array_equal(partial_transpose(partial_transpose(m)), m)

    def test_family_index_map(self):
        # element (r, c) -> (r', c') where the qubit labels of r and c are swapped
        rho = family_state(0.2).matrix
        pt = partial_transpose(rho, on="A")
        pairs = {(0, 5): (3, 2), (1, 4): (4, 1), (2, 3): (5, 0)}  # 0-based (1,6)->(4,3) etc.
        for (r, c), (r2, c2) in pairs.items():
            assert pt[r2, c2] == rho[r, c]
            assert pt[c2, r2] == rho[c, r]
        # brute-force the index map over every entry
        for r in range(6):
            for c in range(6):
                i, j = divmod(r, 3)
                k, l = divmod(c, 3)
                assert pt[r, c] == rho[k * 3 + j, i * 3 + l]

    def test_transpose_on_b(self, rng):
        m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        # T_B = (T_A of the full transpose)
        np.testing.assert_allclose(partial_transpose(m, on="B"), partial_transpose(m, on="A").T)

    @given(seeds)
    @settings(max_examples=50, deadline=None)
    def test_preserves_hermiticity_trace_norm(self, seed):
        rho = random_density(np.random.default_rng(seed), 6)
        pt = partial_transpose(rho)
        assert np.abs(pt - pt.conj().T).max() <= 1e-15
        assert abs(np.trace(pt) - np.trace(rho)) <= 1e-15
        assert abs(np.linalg.norm(pt) - np.linalg.norm(rho)) <= 1e-12


class TestEntropy:
    def test_pure_state(self, rng):
        psi = rng.normal(size=6) + 1j * rng.normal(size=6)
        psi /= np.linalg.norm(psi)
        assert von_neumann_entropy(np.outer(psi, psi.conj())) == pytest.approx(0.0, abs=1e-10)

    def test_maximally_mixed(self):
        assert von_neumann_entropy(np.eye(6) / 6) == pytest.approx(np.log2(6), abs=1e-14)

    def test_binary(self):
        assert von_neumann_entropy(np.diag([0.5, 0.5, 0, 0, 0, 0])) == pytest.approx(1.0, abs=1e-15)

    def test_clamp_small_negative(self):
        assert von_neumann_entropy(np.diag([1.0, -5e-11])) == pytest.approx(0.0, abs=1e-12)

    def test_negative_eigenvalue(self):
        with pytest.raises(NegativeEigenvalue):
            von_neumann_entropy(np.diag([1.1, -0.1]))

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_unitary_invariance(self, seed):
        rng = np.random.default_rng(seed)
        rho = random_density(rng, 6)
        u = random_unitary(rng, 6)
        rotated = u @ rho @ u.conj().T
        rotated = 0.5 * (rotated + rotated.conj().T)
        assert abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) <= 1e-9

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_bounds(self, seed):
        s = von_neumann_entropy(random_density(np.random.default_rng(seed), 6))
        assert 0.0 <= s <= np.log2(6) + 1e-12


class TestTensorProduct:
    def test_identity(self):
        np.testing.assert_array_equal(tensor_product(np.eye(2), np.eye(3)), np.eye(6))

    def test_diagonal_kron(self):
        g = 0.37
        out = tensor_product(np.eye(2), np.diag([1, g, g]))
        np.testing.assert_array_equal(out, np.diag([1, g, g, 1, g, g]))

    def test_index_convention(self, rng):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        out = tensor_product(a, b)
        idx = BipartiteIndex(2, 3)
        for i in range(2):
            for j in range(3):
                for k in range(2):
                    for l in range(3):
                        assert abs(out[idx.flat(i, j), idx.flat(k, l)] - a[i, k] * b[j, l]) <= 1e-15

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_trace_multiplicative(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert abs(np.trace(tensor_product(a, b)) - np.trace(a) * np.trace(b)) <= 1e-12

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_associative(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)) for n in (2, 3, 2))
        lhs = tensor_product(tensor_product(a, b), c)
        rhs = tensor_product(a, tensor_product(b, c))
        assert np.abs(lhs - rhs).max() <= 1e-12
