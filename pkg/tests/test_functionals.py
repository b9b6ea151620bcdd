import numpy as np
import pytest

import soclelab as sl
from soclelab.errors import NoCounterexampleError
from soclelab.functionals import Functional
from soclelab.sampling import (
    random_element,
    random_rank_one_projection,
    rng_for,
)


def e12_functional(spec):
    w = [np.zeros((n, n), dtype=complex) for n in spec.block_sizes]
    w[0][0, 1] = 1.0
    return Functional(spec, w)


class TestEvaluate:
    def test_trace_pairing(self):
        spec = sl.AlgebraSpec((2, 1))
        f = sl.trace_functional(spec)
        a = sl.Element(spec, [np.diag([1.0, 2.0]), [[3.0]]])
        assert sl.evaluate(f, a) == pytest.approx(6.0)

    def test_unit_weight_pairing(self, m2):
        f = e12_functional(m2)
        a = sl.matrix_unit(m2, 0, 1, 0)
        assert sl.evaluate(f, a) == pytest.approx(1.0)

    def test_zero_functional(self, spec23):
        f = sl.blockwise_scalar_functional(spec23, [0.0, 0.0])
        for i in range(5):
            assert sl.evaluate(f, random_element(spec23, rng_for(137, i))) == 0

    def test_linear(self, spec23):
        rng = rng_for(139)
        f = sl.random_functional(spec23, rng)
        a, b = random_element(spec23, rng), random_element(spec23, rng)
        lhs = sl.evaluate(f, sl.scale(2.0, a) + sl.scale(-3.0j, b))
        rhs = 2.0 * sl.evaluate(f, a) - 3.0j * sl.evaluate(f, b)
        assert abs(lhs - rhs) < 1e-10


class TestTracial:
    def test_trace_is_tracial(self, spec23):
        assert sl.is_tracial(sl.trace_functional(spec23))

    def test_unit_weight_is_not(self, m2):
        f = e12_functional(m2)
        assert not sl.is_tracial(f)
        a, b = sl.tracial_witness(f)
        assert abs(sl.evaluate(f, a @ b) - sl.evaluate(f, b @ a)) > 0.5

    def test_blockwise_scalars_are_tracial(self, spec23):
        f = sl.blockwise_scalar_functional(spec23, [2.0, 5.0])
        assert sl.is_tracial(f)
        assert sl.tracial_witness(f) is None


class TestScalarTrace:
    def test_common_scalar(self, spec23):
        f = sl.blockwise_scalar_functional(spec23, [3.0, 3.0])
        assert sl.is_scalar_trace(f) == pytest.approx(3.0)

    def test_first_block_trace_is_not(self, spec22):
        assert sl.is_scalar_trace(sl.counterexample_functional(spec22)) is None

    def test_zero_functional(self, spec23):
        f = sl.blockwise_scalar_functional(spec23, [0.0, 0.0])
        assert sl.is_scalar_trace(f) == 0


class TestSpectralBound:
    def test_trace_bound_constant(self, m3):
        res = sl.spectral_bound_witness(sl.trace_functional(m3))
        assert res.constant == pytest.approx(3.0)
        for i in range(5):
            a = random_element(m3, rng_for(149, i))
            assert abs(sl.evaluate(sl.trace_functional(m3), a)) <= (
                res.constant * sl.spectral_radius(a) + 1e-9
            )

    def test_unit_weight_witness(self, m2):
        res = sl.spectral_bound_witness(e12_functional(m2))
        assert res.constant is None
        assert sl.spectral_radius(res.witness) == 0.0
        assert abs(res.witness_value) == pytest.approx(1.0)

    def test_zero_functional_bound(self, spec23):
        res = sl.spectral_bound_witness(
            sl.blockwise_scalar_functional(spec23, [0.0, 0.0])
        )
        assert res.constant == 0.0


class TestSquareZeroBasis:
    def test_m2_basis(self, m2):
        basis = sl.square_zero_basis(m2)
        assert len(basis) == 3
        for w in basis:
            sq = w @ w
            assert sl.operator_norm(sq) == 0.0

    def test_scalar_block_empty(self):
        assert sl.square_zero_basis(sl.AlgebraSpec((1,))) == []

    def test_span_is_blockwise_traceless(self, spec23):
        basis = sl.square_zero_basis(spec23)
        rows = [np.concatenate([b.ravel() for b in w.blocks]) for w in basis]
        svals = np.linalg.svd(np.array(rows), compute_uv=False)
        dim = int(np.sum(svals > 1e-9 * svals[0]))
        assert dim == sum(n * n - 1 for n in spec23.block_sizes)


class TestVanishing:
    def test_trace_vanishes_both_ways(self, spec23):
        f = sl.trace_functional(spec23)
        assert sl.vanishes_on_square_zero(f).vanishes
        assert sl.vanishes_on_nilpotents(f).vanishes

    def test_unit_weight_fails_with_witness(self, m2):
        f = e12_functional(m2)
        verdict = sl.vanishes_on_square_zero(f)
        assert not verdict.vanishes
        assert abs(sl.evaluate(f, verdict.witness)) > 1e-6
        assert sl.spectral_radius(verdict.witness) == 0.0
        verdict = sl.vanishes_on_nilpotents(f)
        assert not verdict.vanishes

    def test_blockwise_scalars_vanish(self, spec22):
        f = sl.counterexample_functional(spec22)
        assert sl.vanishes_on_square_zero(f).vanishes
        assert sl.vanishes_on_nilpotents(f).vanishes

    def test_scaled_trace_vanishes(self, spec23):
        rng = rng_for(151)
        alpha = complex(rng.standard_normal() + 1j * rng.standard_normal())
        assert sl.vanishes_on_nilpotents(sl.trace_functional(spec23, alpha)).vanishes


class TestRankOneConstancy:
    def test_scaled_trace_constant(self, spec23):
        verdict = sl.constant_on_rank_one_projections(
            sl.trace_functional(spec23, 3.0)
        )
        assert verdict.constant
        assert verdict.value == pytest.approx(3.0)

    def test_first_block_trace_not_constant(self, spec22):
        verdict = sl.constant_on_rank_one_projections(
            sl.counterexample_functional(spec22)
        )
        assert not verdict.constant
        (p1, v1), (p2, v2) = verdict.witnesses
        assert abs(v1 - v2) > 0.5
        f = sl.counterexample_functional(spec22)
        assert sl.evaluate(f, p1) == pytest.approx(v1)
        assert sl.evaluate(f, p2) == pytest.approx(v2)

    def test_zero_functional_constant(self, spec23):
        verdict = sl.constant_on_rank_one_projections(
            sl.blockwise_scalar_functional(spec23, [0.0, 0.0])
        )
        assert verdict.constant
        assert verdict.value == 0


class TestCounterexample:
    def test_two_blocks(self, spec22):
        f = sl.counterexample_functional(spec22)
        np.testing.assert_array_equal(f.weights[0], np.eye(2))
        np.testing.assert_array_equal(f.weights[1], np.zeros((2, 2)))
        assert sl.is_tracial(f)
        assert sl.is_scalar_trace(f) is None

    def test_one_three(self):
        spec = sl.AlgebraSpec((1, 3))
        f = sl.counterexample_functional(spec)
        first = sl.matrix_unit(spec, 0, 0, 0)
        second = sl.Element(spec, [np.zeros((1, 1)), np.eye(3)])
        assert sl.evaluate(f, first) == pytest.approx(1.0)
        assert sl.classical_trace(second) == pytest.approx(3.0)
        assert sl.evaluate(f, second) == 0

    def test_single_block_rejected(self, m2):
        with pytest.raises(NoCounterexampleError):
            sl.counterexample_functional(m2)


class TestEngineInvariants:
    def test_trace_commutes(self, spec23):
        # Tr(ab) = Tr(ba), evaluated through the weight pairing
        f = sl.trace_functional(spec23)
        for i in range(10):
            rng = rng_for(157, i)
            a, b = random_element(spec23, rng), random_element(spec23, rng)
            assert abs(sl.evaluate(f, a @ b) - sl.evaluate(f, b @ a)) <= 1e-8

    def test_three_conditions_agree_on_random_functionals(self, spec23):
        for i in range(40):
            rng = rng_for(163, i)
            kind = i % 4
            if kind == 0:
                f = sl.random_functional(spec23, rng)
            elif kind == 1:
                f = sl.trace_functional(spec23, complex(rng.standard_normal()))
            elif kind == 2:
                f = sl.blockwise_scalar_functional(
                    spec23, rng.standard_normal(2) + 1j * rng.standard_normal(2)
                )
            else:
                f = sl.counterexample_functional(spec23)
            tr = sl.is_tracial(f)
            assert tr == sl.vanishes_on_square_zero(f, seed=i).vanishes
            assert tr == sl.vanishes_on_nilpotents(f, seed=i).vanishes
            assert tr == (sl.spectral_bound_witness(f).constant is not None)

    def test_scalar_implies_tracial_and_constant(self, spec23):
        f = sl.trace_functional(spec23, 2.0 - 1.0j)
        assert sl.is_scalar_trace(f) is not None
        assert sl.is_tracial(f)
        assert sl.constant_on_rank_one_projections(f).constant

    def test_minimal_projection_compression_identity(self, spec23):
        # for rank-one p, p x p is evaluate(Tr, x p) times p
        f = sl.trace_functional(spec23)
        for i in range(10):
            rng = rng_for(167, i)
            p = random_rank_one_projection(spec23, rng)
            x = random_element(spec23, rng)
            lhs = p @ x @ p
            coeff = sl.evaluate(f, x @ p)
            rhs = sl.scale(coeff, p)
            assert sl.operator_norm(lhs - rhs) <= 1e-8 * max(
                1.0, sl.operator_norm(p) ** 2 * sl.operator_norm(x)
            )
