"""Array geometry: normalized spatial frequencies and ULA/UPA steering vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpatialFrequency",
    "ArrayGeometry",
    "to_spatial_frequency",
    "ula_phase_profile",
    "upa_phase_profile",
    "upa_steering",
    "ula_steering",
]


@dataclass(frozen=True)
class SpatialFrequency:
    """Normalized spatial frequency pair in cycles per element.

    ``phi`` is the horizontal component ``(d/lambda) cos(theta) sin(psi)`` and
    ``vartheta`` the vertical one ``(d/lambda) sin(theta)``.
    """

    phi: float
    vartheta: float


@dataclass(frozen=True)
class ArrayGeometry:
    n1: int = 20
    n2: int = 20
    m: int = 2
    d_r_over_lambda: float = 0.5
    d_b_over_lambda: float = 0.5

    def __post_init__(self):
        for name in ("n1", "n2", "m"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.d_r_over_lambda <= 0 or self.d_b_over_lambda <= 0:
            raise ValueError("element spacings must be positive")

    @property
    def n(self) -> int:
        return self.n1 * self.n2


def _check_open_half_pi(name, value):
    if not -math.pi / 2 < value < math.pi / 2:
        raise ValueError(f"{name}={value!r} outside the open interval (-pi/2, pi/2)")


def to_spatial_frequency(psi: float, theta: float, d_over_lambda: float) -> SpatialFrequency:
    """Map (azimuth ``psi``, elevation ``theta``) to normalized frequencies."""
    _check_open_half_pi("psi", psi)
    _check_open_half_pi("theta", theta)
    return SpatialFrequency(
        phi=d_over_lambda * math.cos(theta) * math.sin(psi),
        vartheta=d_over_lambda * math.sin(theta),
    )


def ula_phase_profile(freq, n: int) -> np.ndarray:
    """Un-normalized ``[exp(j 2 pi k freq)]`` for ``k = 0..n-1``."""
    return np.exp(2j * np.pi * np.arange(n) * freq)


def upa_phase_profile(sf: SpatialFrequency, n1: int, n2: int) -> np.ndarray:
    """Un-normalized UPA response; entry ``i*n2 + k`` is exp(j 2 pi (i phi + k vartheta))."""
    if n1 < 1 or n2 < 1:
        raise ValueError("array dimensions must be positive")
    i = np.arange(n1)[:, None]
    k = np.arange(n2)[None, :]
    return np.exp(2j * np.pi * (i * sf.phi + k * sf.vartheta)).ravel()


def upa_steering(sf: SpatialFrequency, n1: int, n2: int) -> np.ndarray:
    return upa_phase_profile(sf, n1, n2) / math.sqrt(n1 * n2)


def ula_steering(phi_aod: float, m: int) -> np.ndarray:
    if m < 1:
        raise ValueError("m must be a positive integer")
    return ula_phase_profile(phi_aod, m) / math.sqrt(m)


def upa_phase_profiles(phi, vartheta, n1: int, n2: int) -> np.ndarray:
    """Stacked phase profiles, one row per ``(phi[p], vartheta[p])`` pair."""
    phi = np.asarray(phi, dtype=float)[:, None, None]
    vartheta = np.asarray(vartheta, dtype=float)[:, None, None]
    i = np.arange(n1)[None, :, None]
    k = np.arange(n2)[None, None, :]
    return np.exp(2j * np.pi * (i * phi + k * vartheta)).reshape(len(phi), n1 * n2)
