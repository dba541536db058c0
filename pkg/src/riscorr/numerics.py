"""Random streams, complex helpers and one-pass statistics.

Every random quantity in the package is drawn from a :class:`RandomStream`
keyed by ``(master_seed, *key)``.  Streams with the same key replay the same
sequence; streams with different keys are statistically independent (numpy's
``SeedSequence`` spawn-key mechanism).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "DataError",
    "DimensionError",
    "ConfigError",
    "RandomStream",
    "StatAccumulator",
    "ComplexAccumulator",
    "sample_standard_complex_gaussian",
    "sample_uniform",
    "accumulate",
    "inner_product",
]


class DataError(ValueError):
    """A sample that cannot be accumulated (NaN, inf, ...)."""


class DimensionError(ValueError):
    """Operands whose shapes do not agree."""


class ConfigError(ValueError):
    """Invalid scenario or run configuration."""


class RandomStream:
    """Deterministic, splittable random stream.

    ``RandomStream(seed, 3).spawn(1)`` is the same stream as
    ``RandomStream(seed, 3, 1)``.
    """

    def __init__(self, master_seed: int, *key: int):
        if master_seed < 0 or any(k < 0 for k in key):
            raise ValueError("seed and stream indices must be non-negative")
        self.master_seed = int(master_seed)
        self.key = tuple(int(k) for k in key)
        seq = np.random.SeedSequence(entropy=self.master_seed, spawn_key=self.key)
        self._gen = np.random.Generator(np.random.PCG64(seq))

    @property
    def stream_index(self) -> tuple[int, ...]:
        return self.key

    def spawn(self, index: int) -> "RandomStream":
        return RandomStream(self.master_seed, *self.key, index)

    def uniform(self, lo=0.0, hi=1.0, size=None):
        """Draws in ``[lo, hi)``."""
        if not lo < hi:
            raise ValueError(f"invalid range: lo={lo!r} must be < hi={hi!r}")
        out = lo + (hi - lo) * self._gen.random(size)
        # lo + (hi - lo) * u can round up to hi
        return np.minimum(out, np.nextafter(hi, lo))

    def complex_normal(self, size=None):
        """CN(0, 1) draws: real and imaginary parts each N(0, 1/2).

        Polar Box-Muller on the complex plane: ``|z|**2`` is Exp(1) and the
        phase is uniform, so no rejection loop is involved.
        """
        u1 = self._gen.random(size)
        u2 = self._gen.random(size)
        radius = np.sqrt(-np.log1p(-u1))
        return radius * np.exp(2j * np.pi * u2)

    def raw(self) -> np.random.Generator:
        return self._gen

    def __repr__(self) -> str:
        return f"RandomStream({self.master_seed}, key={self.key})"


def sample_standard_complex_gaussian(stream: RandomStream) -> complex:
    return complex(stream.complex_normal())


def sample_uniform(stream: RandomStream, lo: float, hi: float) -> float:
    return float(stream.uniform(lo, hi))


class StatAccumulator:
    """Welford running mean/variance with Chan-style merging."""

    __slots__ = ("count", "_mean", "m2")

    def __init__(self):
        self.count = 0
        self._mean = 0.0
        self.m2 = 0.0

    def add(self, x: float) -> "StatAccumulator":
        x = float(x)
        if not math.isfinite(x):
            raise DataError(f"non-finite sample: {x!r}")
        self.count += 1
        delta = x - self._mean
        self._mean += delta / self.count
        self.m2 += delta * (x - self._mean)
        return self

    def extend(self, xs) -> "StatAccumulator":
        for x in xs:
            self.add(x)
        return self

    def merge(self, other: "StatAccumulator") -> "StatAccumulator":
        """Return a new accumulator equivalent to both samples concatenated."""
        out = StatAccumulator()
        n = self.count + other.count
        if n == 0:
            return out
        delta = other._mean - self._mean
        out.count = n
        out._mean = self._mean + delta * other.count / n
        out.m2 = self.m2 + other.m2 + delta * delta * self.count * other.count / n
        return out

    @property
    def mean(self) -> float:
        if self.count == 0:
            raise ValueError("mean of an empty accumulator is undefined")
        return self._mean

    @property
    def variance(self) -> float:
        if self.count < 2:
            raise ValueError("variance needs at least two samples")
        return self.m2 / (self.count - 1)

    @property
    def sem(self) -> float:
        """Standard error of the mean."""
        return math.sqrt(self.variance / self.count)

    def __repr__(self) -> str:
        if self.count == 0:
            return "StatAccumulator(count=0)"
        return f"StatAccumulator(count={self.count}, mean={self._mean:.6g})"


class ComplexAccumulator:
    """Running mean of a complex quantity (real and imaginary parts tracked apart)."""

    __slots__ = ("re", "im")

    def __init__(self):
        self.re = StatAccumulator()
        self.im = StatAccumulator()

    def add(self, z: complex) -> "ComplexAccumulator":
        self.re.add(z.real)
        self.im.add(z.imag)
        return self

    @property
    def count(self) -> int:
        return self.re.count

    @property
    def mean(self) -> complex:
        return complex(self.re.mean, self.im.mean)

    @property
    def sem(self) -> float:
        """Standard error of the complex mean, sqrt(E|z - mean|^2 / n)."""
        return math.sqrt(self.re.sem ** 2 + self.im.sem ** 2)


def accumulate(acc: StatAccumulator, x: float) -> StatAccumulator:
    return acc.add(x)


def inner_product(x, y) -> complex:
    """``x . y^H``, i.e. sum_i x_i conj(y_i)."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise DimensionError(f"length mismatch: {x.shape} vs {y.shape}")
    return complex(np.vdot(y, x))
