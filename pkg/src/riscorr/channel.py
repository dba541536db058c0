"""Rician BS-RIS channel, multipath RIS-UE channels and the cascade between them.

Conventions (row vectors throughout, as in ``y = h Theta G x``):

* ``G`` is N x M, ``G = sqrt(k/(k+1)) G_los + sqrt(1/(k+1)) G_nlos``.
* ``G_los = b_R a^H`` with unit-norm UPA/ULA steering vectors.
* ``h`` is length N, ``h = N**-0.5 * sum_p alpha_p conj(b(phi_p, vartheta_p))``.
* ``H = (p * h) @ G`` is length M; LOS and NLOS parts are kept apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import ArrayGeometry, SpatialFrequency, ula_steering, upa_phase_profiles, upa_steering
from .numerics import DimensionError, RandomStream

__all__ = [
    "SystemParams",
    "BsRisChannel",
    "RisUeChannel",
    "CascadeChannel",
    "sample_bs_ris",
    "sample_ris_ue",
    "cascade",
    "los_cascade_closed_form",
]


@dataclass(frozen=True)
class SystemParams:
    """Scenario constants.

    ``kappa`` is the linear Rician factor.  ``aod`` is either ``None``
    (AoD spatial frequency redrawn uniformly every realization) or a fixed
    normalized AoD frequency.
    """

    geometry: ArrayGeometry = field(default_factory=ArrayGeometry)
    kappa: float = 5.0
    paths_k: int = 3
    paths_l: int = 3
    aod: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise ValueError(f"kappa must be finite and >= 0, got {self.kappa!r}")
        if self.paths_k < 1 or self.paths_l < 1:
            raise ValueError("path counts must be >= 1")
        if self.aod is not None and not abs(self.aod) < self.geometry.d_b_over_lambda:
            raise ValueError("fixed AoD frequency must lie in (-d_B/lambda, d_B/lambda)")

    @property
    def n(self) -> int:
        return self.geometry.n

    @property
    def m(self) -> int:
        return self.geometry.m

    @property
    def los_scale(self) -> float:
        return math.sqrt(self.kappa / (self.kappa + 1.0))

    @property
    def nlos_scale(self) -> float:
        return math.sqrt(1.0 / (self.kappa + 1.0))


@dataclass(frozen=True)
class BsRisChannel:
    g_los: np.ndarray
    g_nlos: np.ndarray
    kappa: float
    aoa: SpatialFrequency
    phi_aod: float

    @property
    def shape(self) -> tuple[int, int]:
        return self.g_nlos.shape

    @property
    def composite(self) -> np.ndarray:
        k = self.kappa
        return math.sqrt(k / (k + 1.0)) * self.g_los + math.sqrt(1.0 / (k + 1.0)) * self.g_nlos


@dataclass(frozen=True)
class RisUeChannel:
    gains: np.ndarray
    phi: np.ndarray
    vartheta: np.ndarray
    vector: np.ndarray

    @property
    def freqs(self) -> list[SpatialFrequency]:
        return [SpatialFrequency(float(a), float(b)) for a, b in zip(self.phi, self.vartheta)]

    @classmethod
    def from_paths(cls, gains, phi, vartheta, n1: int, n2: int) -> "RisUeChannel":
        gains = np.atleast_1d(np.asarray(gains, dtype=complex))
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        vartheta = np.atleast_1d(np.asarray(vartheta, dtype=float))
        profiles = upa_phase_profiles(phi, vartheta, n1, n2)
        vector = gains @ profiles.conj() / math.sqrt(n1 * n2)
        return cls(gains, phi, vartheta, vector)


@dataclass(frozen=True)
class CascadeChannel:
    los_part: np.ndarray
    nlos_part: np.ndarray

    @property
    def full(self) -> np.ndarray:
        return self.los_part + self.nlos_part


def sample_bs_ris(params: SystemParams, stream: RandomStream) -> BsRisChannel:
    geo = params.geometry
    dr, db = geo.d_r_over_lambda, geo.d_b_over_lambda
    phi1, vartheta1 = stream.uniform(-dr, dr, 2)
    phi_aod = float(stream.uniform(-db, db)) if params.aod is None else params.aod
    aoa = SpatialFrequency(float(phi1), float(vartheta1))
    g_los = np.outer(upa_steering(aoa, geo.n1, geo.n2), ula_steering(phi_aod, geo.m).conj())
    g_nlos = stream.complex_normal((geo.n, geo.m))
    return BsRisChannel(g_los, g_nlos, params.kappa, aoa, phi_aod)


def sample_ris_ue(params: SystemParams, n_paths: int, stream: RandomStream) -> RisUeChannel:
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    geo = params.geometry
    dr = geo.d_r_over_lambda
    gains = stream.complex_normal(n_paths)
    freqs = stream.uniform(-dr, dr, (n_paths, 2))
    return RisUeChannel.from_paths(gains, freqs[:, 0], freqs[:, 1], geo.n1, geo.n2)


def cascade(h: RisUeChannel, p, g: BsRisChannel) -> CascadeChannel:
    """LOS/NLOS parts of ``p^T diag(h^T) G``.

    ``p`` is a :class:`~riscorr.phases.PhaseVector` or a complex array of
    reflection coefficients.
    """
    p = np.asarray(getattr(p, "vector", p))
    hv = h.vector if isinstance(h, RisUeChannel) else np.asarray(h)
    n, _ = g.shape
    if p.shape != (n,) or hv.shape != (n,):
        raise DimensionError(f"expected length-{n} p and h, got {p.shape} and {hv.shape}")
    u = p * hv
    k = g.kappa
    return CascadeChannel(
        los_part=math.sqrt(k / (k + 1.0)) * (u @ g.g_los),
        nlos_part=math.sqrt(1.0 / (k + 1.0)) * (u @ g.g_nlos),
    )


def los_cascade_closed_form(h: RisUeChannel, p, g: BsRisChannel, n1: int, n2: int) -> np.ndarray:
    """LOS cascade via the per-path array-gain form.

    ``(1/N) sqrt(k/(k+1)) sum_p alpha_p (p^T b(phi_1 - phi_p, vartheta_1 - vartheta_p)) a^H``.
    Independent of the matrix chain in :func:`cascade`; used as a cross-check.
    """
    p = np.asarray(getattr(p, "vector", p))
    n, m = g.shape
    if n1 * n2 != n:
        raise DimensionError(f"{n1}x{n2} UPA does not match N={n}")
    diff = upa_phase_profiles(g.aoa.phi - h.phi, g.aoa.vartheta - h.vartheta, n1, n2)
    array_gain = diff @ p
    a = ula_steering(g.phi_aod, m)
    k = g.kappa
    return math.sqrt(k / (k + 1.0)) / n * np.sum(h.gains * array_gain) * a.conj()
