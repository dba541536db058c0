"""RIS reflection configurations: equal phase, random phase, DFT binary-tree codebook."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import BsRisChannel, RisUeChannel
from .numerics import ConfigError, DimensionError, RandomStream

__all__ = [
    "ConfigError",
    "PhaseVector",
    "Codebook",
    "equal_phase",
    "random_phase",
    "build_codebook",
    "codebook_select",
    "summed_cascade_power",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class PhaseVector:
    """Per-element reflection phases, reduced to ``[0, 2 pi)``."""

    phases: np.ndarray

    def __post_init__(self):
        ph = np.mod(np.asarray(self.phases, dtype=float), TWO_PI)
        object.__setattr__(self, "phases", ph)

    @property
    def vector(self) -> np.ndarray:
        return np.exp(1j * self.phases)

    def __len__(self):
        return len(self.phases)


def equal_phase(n: int, phi0: float) -> PhaseVector:
    if n < 1:
        raise ValueError("n must be >= 1")
    return PhaseVector(np.full(n, float(phi0)))


def random_phase(n: int, stream: RandomStream) -> PhaseVector:
    if n < 1:
        raise ValueError("n must be >= 1")
    return PhaseVector(stream.uniform(0.0, TWO_PI, n))


def _is_pow2(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


@dataclass(frozen=True, eq=False)
class Codebook:
    """Hierarchical codebook.

    ``layers[k]`` holds the codewords of layer ``k + 1`` (``2**(k+1)`` of
    them); the last layer is the full N-beam DFT grid used for selection.
    Each upper-layer codeword is represented by the phase vector of its
    leftmost descendant in the bottom layer.
    """

    layers: tuple[tuple[PhaseVector, ...], ...]

    @property
    def codewords(self) -> tuple[PhaseVector, ...]:
        return self.layers[-1]

    @property
    def layer_structure(self) -> list[tuple[int, int]]:
        return [(k + 1, len(layer)) for k, layer in enumerate(self.layers)]

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    def matrix(self) -> np.ndarray:
        """Bottom-layer codewords as a (count, N) complex array."""
        return np.stack([cw.vector for cw in self.codewords])

    @classmethod
    def from_codewords(cls, codewords) -> "Codebook":
        return cls((tuple(codewords),))


def build_codebook(n1: int, n2: int) -> Codebook:
    if not (_is_pow2(n1) and _is_pow2(n2)):
        raise ConfigError(f"codebook needs power-of-two array sides, got n1={n1}, n2={n2}")
    n = n1 * n2
    i1 = np.repeat(np.arange(n1), n2)  # element row index, flat order i1*n2 + i2
    i2 = np.tile(np.arange(n2), n1)
    bottom = tuple(
        PhaseVector(TWO_PI * (i1 * a / n1 + i2 * b / n2))
        for a in range(n1)
        for b in range(n2)
    )
    depth = n.bit_length() - 1
    layers = [
        tuple(bottom[c * (n >> k)] for c in range(2 ** k))
        for k in range(1, depth + 1)
    ]
    if not layers:  # N == 1
        layers = [bottom]
    return Codebook(tuple(layers))


def summed_cascade_power(vectors: np.ndarray, g: BsRisChannel, h_k: RisUeChannel,
                         h_l: RisUeChannel) -> np.ndarray:
    """``||H_k||^2 + ||H_l||^2`` for every row of ``vectors`` (count x N)."""
    n, _ = g.shape
    if vectors.shape[1] != n or h_k.vector.shape != (n,) or h_l.vector.shape != (n,):
        raise DimensionError("codeword, channel and RIS sizes disagree")
    k = g.kappa
    s_los, s_nlos = math.sqrt(k / (k + 1.0)), math.sqrt(1.0 / (k + 1.0))
    total = np.zeros(vectors.shape[0])
    for h in (h_k.vector, h_l.vector):
        full = s_los * (vectors @ (h[:, None] * g.g_los)) + s_nlos * (vectors @ (h[:, None] * g.g_nlos))
        total += np.sum(np.abs(full) ** 2, axis=1)
    return total


def codebook_select(cb: Codebook, g: BsRisChannel, h_k: RisUeChannel, h_l: RisUeChannel,
                    matrix: np.ndarray | None = None) -> PhaseVector:
    """Bottom-layer codeword with the largest summed cascade power (first index on ties).

    ``matrix`` may carry a cached ``cb.matrix()``.
    """
    if matrix is None:
        matrix = cb.matrix()
    power = summed_cascade_power(matrix, g, h_k, h_l)
    return cb.codewords[int(np.argmax(power))]
