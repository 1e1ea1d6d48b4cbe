import cmath
import json
import math

import numpy as np
import pytest

from wstategen import linalg

OMEGA = cmath.exp(2j * math.pi / 3)


class TestDftMultiport:
    def test_tritter_matches_standard_form(self):
        t = linalg.dft_multiport(3)
        expected = np.array(
            [[1, 1, 1], [1, OMEGA, OMEGA**2], [1, OMEGA**2, OMEGA]]
        ) / math.sqrt(3)
        assert np.max(np.abs(t - expected)) <= 1e-15

    def test_n2_is_balanced_beam_splitter(self):
        b = linalg.dft_multiport(2)
        expected = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
        assert np.allclose(b, expected, atol=1e-15)

    def test_n4_entry(self):
        # entry (2,3) is exp(i*2*pi*6/4)/2 = exp(i*3*pi)/2 = -1/2
        u = linalg.dft_multiport(4)
        assert abs(u[2, 3] - (-0.5)) <= 1e-15
        assert abs(u[1, 2] - (-0.5)) <= 1e-15
        assert abs(u[1, 3] - (-0.5j)) <= 1e-15

    @pytest.mark.parametrize("n", range(2, 9))
    def test_unitary(self, n):
        assert linalg.verify_unitary(linalg.dft_multiport(n), 1e-10)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_symmetric(self, n):
        u = linalg.dft_multiport(n)
        assert np.max(np.abs(u - u.T)) <= 1e-15

    @pytest.mark.parametrize("n", [1, 0, -3])
    def test_rejects_small_n(self, n):
        with pytest.raises(ValueError):
            linalg.dft_multiport(n)


class TestCanonicalQuarter:
    def test_unitary_and_balanced(self):
        q = linalg.canonical_quarter()
        assert linalg.verify_unitary(q, 1e-12)
        assert np.allclose(np.abs(q), 0.5)


class TestVerifyUnitary:
    def test_identity(self):
        assert linalg.verify_unitary(np.eye(3), 1e-12)

    def test_rank_one_rejected(self):
        m = np.ones((2, 2)) / math.sqrt(2)
        assert not linalg.verify_unitary(m, 1e-10)

    def test_non_square_raises(self):
        with pytest.raises(ValueError):
            linalg.verify_unitary(np.ones((2, 3)))

    def test_nonpositive_tol_raises(self):
        with pytest.raises(ValueError):
            linalg.verify_unitary(np.eye(2), 0.0)


class TestPermanent:
    def test_identity(self):
        for k in range(1, 6):
            assert abs(linalg.permanent(np.eye(k)) - 1.0) <= 1e-12

    def test_2x2_definition(self):
        m = np.array([[1 + 2j, 3], [5j, 7 - 1j]])
        expected = m[0, 0] * m[1, 1] + m[0, 1] * m[1, 0]
        assert abs(linalg.permanent(m) - expected) <= 1e-12

    def test_tritter_submatrix(self):
        # rows {0,1} x cols {0,1} of the tritter; 2 permutations by hand
        sub = linalg.dft_multiport(3)[np.ix_([0, 1], [0, 1])]
        expected = (1 + OMEGA) / 3
        assert abs(linalg.permanent_naive(sub) - expected) <= 1e-12
        assert abs(linalg.permanent(sub) - expected) <= 1e-12

    @pytest.mark.parametrize("k", range(1, 8))
    def test_ryser_matches_naive_on_random(self, k):
        rng = np.random.default_rng(1000 + k)
        for _ in range(100):
            m = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
            ryser = linalg.permanent(m)
            naive = linalg.permanent_naive(m)
            assert abs(ryser - naive) <= 1e-9 * max(1.0, abs(naive))

    def test_row_multilinear(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            k = int(rng.integers(1, 6))
            m = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
            s = complex(rng.normal(), rng.normal())
            row = int(rng.integers(0, k))
            scaled = m.copy()
            scaled[row] *= s
            base = linalg.permanent(m)
            assert abs(linalg.permanent(scaled) - s * base) <= 1e-9 * max(1.0, abs(s * base))

    def test_rejects_empty_and_non_square(self):
        with pytest.raises(ValueError):
            linalg.permanent(np.empty((0, 0)))
        with pytest.raises(ValueError):
            linalg.permanent(np.ones((2, 3)))

    def test_size_cap(self):
        with pytest.raises(ValueError):
            linalg.permanent(np.eye(25))


class TestCompleteUnitary:
    def test_identity_target(self):
        u = linalg.complete_unitary_from_column(np.array([1.0, 0.0, 0.0]))
        assert np.allclose(u, np.eye(3))

    def test_clone_target(self):
        target = np.array([math.sqrt(2 / 3), -math.sqrt(1 / 6), -math.sqrt(1 / 6)])
        u = linalg.complete_unitary_from_column(target)
        assert linalg.verify_unitary(u, 1e-10)
        assert np.max(np.abs(u[:, 0] - target)) <= 1e-10

    def test_uniform_target_matches_tritter_probabilities(self):
        target = np.full(3, 1 / math.sqrt(3))
        u = linalg.complete_unitary_from_column(target)
        tritter_col = linalg.dft_multiport(3)[:, 0]
        assert np.allclose(np.abs(u[:, 0]) ** 2, np.abs(tritter_col) ** 2, atol=1e-12)

    def test_random_targets_round_trip(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            n = int(rng.integers(2, 9))
            v = rng.normal(size=n) + 1j * rng.normal(size=n)
            v /= np.linalg.norm(v)
            u = linalg.complete_unitary_from_column(v)
            assert linalg.verify_unitary(u, 1e-10)
            assert np.max(np.abs(u[:, 0] - v)) <= 1e-10

    def test_deterministic(self):
        v = np.array([0.6, 0.8j])
        a = linalg.complete_unitary_from_column(v)
        b = linalg.complete_unitary_from_column(v)
        assert np.array_equal(a, b)

    def test_pure_phase_target(self):
        v = np.array([cmath.exp(0.7j), 0.0, 0.0])
        u = linalg.complete_unitary_from_column(v)
        assert linalg.verify_unitary(u, 1e-10)
        assert np.max(np.abs(u[:, 0] - v)) <= 1e-10

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            linalg.complete_unitary_from_column(np.array([1.0, 1.0]))


class TestMatrixIO:
    def test_round_trip(self, tmp_path):
        u = linalg.dft_multiport(5)
        path = tmp_path / "m.json"
        linalg.write_matrix(path, u)
        back = linalg.read_matrix(path)
        assert np.array_equal(u, back)

    def test_format_shape(self, tmp_path):
        path = tmp_path / "m.json"
        linalg.write_matrix(path, np.eye(2))
        obj = json.loads(path.read_text())
        assert obj["n"] == 2
        assert obj["entries"] == [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]

    def test_rejects_non_square(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"n": 2, "entries": [[1, 0], [0, 0], [0, 0]]}))
        with pytest.raises(ValueError):
            linalg.read_matrix(path)

    def test_rejects_non_finite(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 1, "entries": [[NaN, 0.0]]}')
        with pytest.raises(ValueError):
            linalg.read_matrix(path)
