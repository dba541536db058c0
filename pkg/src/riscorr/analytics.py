"""Closed-form powers and the mean squared correlation approximation.

All functions take the Rician factor ``kappa`` on a linear scale.

Notation: ``L``/``Lk``/``Ll`` are RIS-UE path counts, ``N`` the number of RIS
elements and ``M`` the number of BS antennas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ComponentPowers",
    "CorrelationPrediction",
    "mean_los_power",
    "mean_nlos_power",
    "mean_cross_power",
    "mean_channel_power",
    "inner_power_loslos",
    "inner_power_losnlos",
    "inner_power_nlosnlos",
    "approx_mean_sq_corr",
    "mean_sq_corr_from_components",
    "mean_corr_upper",
    "asymptotic_corr",
    "component_powers",
    "predict",
    "inner_power_nlosnlos_exact",
    "loslos_nlosnlos_pair_mean",
    "db_to_linear",
]


def _los_share(kappa):
    return kappa / (kappa + 1.0)


def mean_los_power(L, N, kappa):
    return L / N * _los_share(kappa)


def mean_nlos_power(L, M, kappa):
    return M * L / (kappa + 1.0)


def mean_cross_power(*_args):
    """Mean of ``H_LOS . H_NLOS^H`` (and its conjugate); zero for every scenario."""
    return 0.0


def mean_channel_power(L, N, M, kappa):
    """Mean of ``||H||^2``; the LOS/NLOS cross terms have zero mean."""
    return mean_los_power(L, N, kappa) + mean_nlos_power(L, M, kappa) + 2 * mean_cross_power()


def inner_power_loslos(Lk, Ll, N, kappa):
    return Lk * Ll / N ** 2 * _los_share(kappa) ** 2


def inner_power_losnlos(Lk, Ll, N, kappa):
    """Mean of ``|H_k,LOS . H_l,NLOS^H|^2``, equal to that of ``|H_k,NLOS . H_l,LOS^H|^2``."""
    return Lk * Ll / N * kappa / (kappa + 1.0) ** 2


def inner_power_nlosnlos(Lk, Ll, M, kappa):
    return M * Lk * Ll / (kappa + 1.0) ** 2


def approx_mean_sq_corr(M, N, kappa):
    """Approximate E[rho^2] = 1 - (M-1)(M + 2k/N) / (k/N + M)^2."""
    if M == 1:
        return 1.0
    x = kappa / N
    return 1.0 - (M - 1) * (M + 2 * x) / (x + M) ** 2


def mean_sq_corr_from_components(M, N, kappa, Lk=1, Ll=1):
    """Same approximation assembled from the six component powers.

    Ratio of the mean inner-product power to the product of the mean
    channel powers; the path counts cancel.
    """
    num = (inner_power_loslos(Lk, Ll, N, kappa)
           + 2 * inner_power_losnlos(Lk, Ll, N, kappa)
           + inner_power_nlosnlos(Lk, Ll, M, kappa))
    return num / (mean_channel_power(Lk, N, M, kappa) * mean_channel_power(Ll, N, M, kappa))


def mean_corr_upper(M, N, kappa):
    """Jensen upper bound sqrt(E[rho^2]) on E[rho]."""
    return math.sqrt(approx_mean_sq_corr(M, N, kappa))


def asymptotic_corr(M):
    """Limit of E[rho] as N grows (or kappa -> 0)."""
    if M < 1:
        raise ValueError("M must be >= 1")
    return math.sqrt(1.0 / M)


def db_to_linear(value_db):
    return 10.0 ** (value_db / 10.0)


@dataclass(frozen=True)
class ComponentPowers:
    los_power: float
    nlos_power: float
    cross_power: float
    loslos_inner: float
    losnlos_inner: float
    nlosnlos_inner: float


@dataclass(frozen=True)
class CorrelationPrediction:
    mean_rho_sq: float
    mean_rho_upper: float
    asymptote: float


def component_powers(Lk, Ll, N, M, kappa) -> ComponentPowers:
    """Closed-form component powers; single-channel terms use ``Lk``."""
    return ComponentPowers(
        los_power=mean_los_power(Lk, N, kappa),
        nlos_power=mean_nlos_power(Lk, M, kappa),
        cross_power=mean_cross_power(),
        loslos_inner=inner_power_loslos(Lk, Ll, N, kappa),
        losnlos_inner=inner_power_losnlos(Lk, Ll, N, kappa),
        nlosnlos_inner=inner_power_nlosnlos(Lk, Ll, M, kappa),
    )


def predict(M, N, kappa) -> CorrelationPrediction:
    rho_sq = approx_mean_sq_corr(M, N, kappa)
    return CorrelationPrediction(rho_sq, math.sqrt(rho_sq), asymptotic_corr(M))


# Exact finite-N moments not captured by the component powers above.  They
# quantify where the simulation departs from the approximation at small N.

def inner_power_nlosnlos_exact(Lk, Ll, N, M, kappa):
    """Exact E|H_k,NLOS . H_l,NLOS^H|^2 = Lk Ll (M + M^2/N) / (kappa+1)^2.

    The extra ``M^2/N`` comes from the two user channels overlapping through
    the shared NLOS matrix: E|h_k . h_l^H|^2 = Lk Ll / N.
    """
    return Lk * Ll * (M + M * M / N) / (kappa + 1.0) ** 2


def loslos_nlosnlos_pair_mean(Lk, Ll, N, M, kappa):
    """Exact mean of the conjugate pair
    ``H_kL H_lL^H H_lN H_kN^H + conj(...)``: 2 M kappa Lk Ll / (N^2 (kappa+1)^2)."""
    return 2.0 * M * kappa * Lk * Ll / (N ** 2 * (kappa + 1.0) ** 2)
