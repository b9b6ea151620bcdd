import numpy as np
import pytest

import soclelab as sl
from soclelab.commutators import CommutatorCertificate, MatrixUnit
from soclelab.errors import DegenerateProjectionError, NotTracelessError
from soclelab.sampling import random_element, random_traceless_matrix, rng_for

from conftest import single


def units(cert):
    return [
        (c, (left.row, left.col), (right.row, right.col))
        for c, left, right in cert.terms
    ]


class TestDecomposition:
    def test_single_off_diagonal_unit(self):
        m = np.zeros((2, 2), dtype=complex)
        m[0, 1] = 1.0
        cert = sl.commutator_decompose(m)
        assert units(cert) == [(1.0, (0, 0), (0, 1))]
        assert cert.reconstruction_defect == 0.0

    def test_diagonal_pair(self):
        cert = sl.commutator_decompose(np.diag([1.0, -1.0]))
        assert units(cert) == [(1.0, (0, 1), (1, 0))]

    def test_telescoping_diagonal(self):
        cert = sl.commutator_decompose(np.diag([1.0, 2.0, -3.0]))
        assert units(cert) == [(1.0, (0, 1), (1, 0)), (3.0, (1, 2), (2, 1))]
        assert cert.reconstruction_defect <= 1e-12

    def test_one_by_one_is_empty(self):
        cert = sl.commutator_decompose(np.zeros((1, 1)))
        assert cert.terms == ()
        assert cert.reconstruction_defect == 0.0

    def test_nonzero_trace_rejected(self):
        with pytest.raises(NotTracelessError) as err:
            sl.commutator_decompose(np.eye(2))
        assert err.value.trace == pytest.approx(2.0)

    def test_zero_entries_skipped(self):
        m = np.zeros((3, 3), dtype=complex)
        m[0, 2] = 5.0
        cert = sl.commutator_decompose(m)
        assert len(cert.terms) == 1

    def test_term_bound(self):
        for n in range(1, 9):
            m = random_traceless_matrix(n, rng_for(107, n))
            cert = sl.commutator_decompose(m)
            assert len(cert.terms) <= n * n - 1

    def test_round_trip_random(self):
        for i in range(60):
            rng = rng_for(109, i)
            n = int(rng.integers(1, 9))
            m = random_traceless_matrix(n, rng)
            cert = sl.commutator_decompose(m)
            assert sl.verify_certificate(cert) <= 1e-12


class TestVerification:
    def test_recomputes_from_scratch(self):
        m = random_traceless_matrix(4, rng_for(113))
        cert = sl.commutator_decompose(m)
        perturbed = CommutatorCertificate(
            block=cert.block,
            block_size=cert.block_size,
            terms=(
                (cert.terms[0][0] + 1.0, cert.terms[0][1], cert.terms[0][2]),
            )
            + cert.terms[1:],
            target=cert.target,
            reconstruction_defect=cert.reconstruction_defect,
        )
        assert sl.verify_certificate(perturbed) >= 0.5

    def test_empty_certificate_zero_target(self):
        cert = CommutatorCertificate(
            block=0,
            block_size=2,
            terms=(),
            target=np.zeros((2, 2), dtype=complex),
            reconstruction_defect=0.0,
        )
        assert sl.verify_certificate(cert) == 0.0

    def test_commutators_are_trace_free(self, spec23):
        # single commutators always land in the trace kernel
        for i in range(6):
            rng = rng_for(127, i)
            a = random_element(spec23, rng)
            b = random_element(spec23, rng)
            comm = a @ b - b @ a
            assert abs(sl.spectral_trace(comm, seed=i)) <= 1e-8

    def test_unit_embedding(self, spec23):
        u = MatrixUnit(1, 0, 2)
        e = u.element(spec23)
        assert e.blocks[1][0, 2] == 1.0
        assert np.count_nonzero(e.blocks[0]) == 0


class TestRankOnePair:
    def test_equal_projections_give_zero(self):
        pair = sl.rank_one_commutator([1.0, 2.0], [0.5, 0.25], [1.0, 2.0], [0.5, 0.25])
        np.testing.assert_allclose(pair.P, pair.Q)
        np.testing.assert_allclose(pair.S @ pair.T - pair.T @ pair.S, np.zeros((2, 2)), atol=1e-14)

    def test_unit_projections(self):
        pair = sl.rank_one_commutator([1, 0], [1, 0], [0, 1], [0, 1])
        np.testing.assert_array_equal(pair.S, [[0, 1], [0, 0]])
        np.testing.assert_array_equal(pair.T, [[0, 0], [1, 0]])
        np.testing.assert_array_equal(
            pair.S @ pair.T - pair.T @ pair.S, np.diag([1.0, -1.0])
        )

    def test_skew_projection_entrywise(self):
        pair = sl.rank_one_commutator([1, 0], [1, 0], [1, 1], [0.5, 0.5])
        np.testing.assert_allclose(pair.Q, 0.5 * np.ones((2, 2)))
        delta = (pair.P - pair.Q) - (pair.S @ pair.T - pair.T @ pair.S)
        assert np.max(np.abs(delta)) <= 1e-12

    def test_factors_have_rank_one(self):
        for i in range(20):
            rng = rng_for(131, i)
            n = int(rng.integers(2, 7))
            x, f, y, g = (rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(4))
            pair = sl.rank_one_commutator(x, f, y, g)
            assert pair.defect <= 1e-12
            for m in (pair.S, pair.T, pair.P, pair.Q):
                s = np.linalg.svd(m, compute_uv=False)
                assert int(np.sum(s > 1e-9 * s[0])) == 1

    def test_degenerate_pairing_rejected(self):
        with pytest.raises(DegenerateProjectionError):
            sl.rank_one_commutator([1, 0], [0, 1], [1, 0], [1, 0])
