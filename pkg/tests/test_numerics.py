import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from riscorr.numerics import (
    ComplexAccumulator,
    DataError,
    DimensionError,
    RandomStream,
    StatAccumulator,
    accumulate,
    inner_product,
    sample_standard_complex_gaussian,
    sample_uniform,
)


class TestComplexGaussian:
    def test_moments(self):
        z = RandomStream(7, 0).complex_normal(10 ** 6)
        assert abs(z.real.mean()) < 0.005
        assert abs(z.imag.mean()) < 0.005
        assert np.mean(np.abs(z) ** 2) == pytest.approx(1.0, abs=0.01)
        # each part carries half the power
        assert np.var(z.real) == pytest.approx(0.5, abs=0.005)
        assert abs(np.mean(z.real * z.imag)) < 0.005

    def test_deterministic(self):
        a = [sample_standard_complex_gaussian(s) for s in [RandomStream(3, 1)] for _ in range(100)]
        s = RandomStream(3, 1)
        b = [sample_standard_complex_gaussian(s) for _ in range(100)]
        assert a == b

    def test_distinct_streams_differ(self):
        a = RandomStream(3, 1).complex_normal(1000)
        b = RandomStream(3, 2).complex_normal(1000)
        assert not np.array_equal(a, b)
        # uncorrelated to CLT precision
        assert abs(np.mean(a * b.conj())) < 4 / math.sqrt(1000)

    def test_spawn_matches_explicit_key(self):
        assert np.array_equal(RandomStream(5, 2).spawn(3).complex_normal(8),
                              RandomStream(5, 2, 3).complex_normal(8))


class TestUniform:
    def test_mean(self):
        u = RandomStream(11).uniform(0.0, 1.0, 10 ** 6)
        assert u.mean() == pytest.approx(0.5, abs=0.001)

    def test_range(self):
        u = RandomStream(11).uniform(-0.5, 0.5, 10 ** 5)
        assert u.min() >= -0.5 and u.max() < 0.5

    def test_scalar_and_determinism(self):
        s1, s2 = RandomStream(1, 4), RandomStream(1, 4)
        assert [sample_uniform(s1, 2, 3) for _ in range(20)] == [sample_uniform(s2, 2, 3) for _ in range(20)]

    @pytest.mark.parametrize("lo,hi", [(1.0, 1.0), (2.0, 1.0)])
    def test_invalid_range(self, lo, hi):
        with pytest.raises(ValueError, match="invalid range"):
            sample_uniform(RandomStream(0), lo, hi)


class TestAccumulator:
    def test_single(self):
        acc = accumulate(StatAccumulator(), 3.0)
        assert acc.count == 1 and acc.mean == 3.0

    def test_two_points(self):
        acc = StatAccumulator().extend([1.0, 3.0])
        assert acc.mean == 2.0
        assert acc.variance == 2.0

    def test_empty_mean_is_error(self):
        with pytest.raises(ValueError):
            StatAccumulator().mean

    def test_rejects_non_finite(self):
        for bad in (math.nan, math.inf):
            with pytest.raises(DataError):
                StatAccumulator().add(bad)

    def test_against_two_pass(self):
        x = RandomStream(2).raw().lognormal(1.0, 2.0, 10 ** 4) + 1e6
        acc = StatAccumulator().extend(x)
        mean = math.fsum(x) / len(x)
        var = math.fsum((xi - mean) ** 2 for xi in x) / (len(x) - 1)
        assert acc.mean == pytest.approx(mean, rel=1e-10)
        assert acc.variance == pytest.approx(var, rel=1e-10)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=30),
           st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=30),
           st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=30))
    def test_merge_associative_and_exact(self, a, b, c):
        A, B, C = (StatAccumulator().extend(v) for v in (a, b, c))
        left = A.merge(B).merge(C)
        right = A.merge(B.merge(C))
        whole = StatAccumulator().extend(a + b + c)
        for acc in (left, right):
            assert acc.count == whole.count
            assert acc.mean == pytest.approx(whole.mean, rel=1e-9, abs=1e-9)
            assert acc.m2 == pytest.approx(whole.m2, rel=1e-9, abs=1e-6)

    def test_complex_accumulator(self):
        acc = ComplexAccumulator()
        for z in (1 + 1j, 3 - 1j):
            acc.add(z)
        assert acc.mean == 2 + 0j
        assert acc.sem == pytest.approx(math.sqrt(2 / 2 + 2 / 2))


complexes = st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)


class TestInnerProduct:
    def test_examples(self):
        assert inner_product([1, 1j], [1, 1j]) == 2
        assert inner_product([1, 0], [0, 1]) == 0
        assert inner_product([1 + 1j, 2], [1j, 1 - 1j]) == 3 + 1j

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            inner_product([1, 2], [1, 2, 3])

    @given(st.lists(complexes, min_size=1, max_size=8).flatmap(
        lambda x: st.tuples(st.just(x), st.lists(complexes, min_size=len(x), max_size=len(x)))))
    def test_properties(self, xy):
        x, y = (np.array(v, dtype=complex) for v in xy)
        xx = inner_product(x, x)
        assert xx.imag == 0 and xx.real >= 0
        assert xx.real == pytest.approx(np.sum(np.abs(x) ** 2))
        assert inner_product(x, y) == pytest.approx(inner_product(y, x).conjugate())
