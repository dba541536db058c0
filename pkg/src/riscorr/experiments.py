"""Monte Carlo estimation of the cascade-channel correlation and its components.

Realization ``r`` of sweep point ``i`` draws everything from
``RandomStream(master_seed, i, r)`` (children: 0 BS-RIS, 1 user k, 2 user l,
3 random phases), so results do not depend on how realizations are spread
over worker threads.  Samples are reduced in realization order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import analytics
from .channel import CascadeChannel, SystemParams, cascade, sample_bs_ris, sample_ris_ue
from .geometry import ArrayGeometry
from .numerics import ComplexAccumulator, ConfigError, RandomStream, StatAccumulator
from .phases import build_codebook, codebook_select, equal_phase, random_phase

__all__ = [
    "DegenerateChannelError",
    "PhaseMode",
    "Sweep",
    "ExperimentConfig",
    "CorrelationStats",
    "SweepPoint",
    "ComponentRow",
    "empirical_corr",
    "run_point",
    "run_sweep",
    "component_power_report",
    "COMPONENTS",
    "CONJUGATE_PAIRS",
    "component_rows",
    "component_theory",
    "default_params",
    "square_side",
    "with_geometry",
]

# Table of the 16 terms of |H_k H_l^H|^2: term t (1-based) is
# (H_k^X H_l^Y^H)(H_l^Z H_k^W^H) with t - 1 = 8X + 4Y + 2Z + W, LOS=0, NLOS=1.
CONJUGATE_PAIRS = ((2, 9), (3, 5), (4, 13), (6, 11), (8, 15), (12, 14))

COMPONENTS = (
    "los_power",        # ||H_k,LOS||^2
    "nlos_power",       # ||H_k,NLOS||^2
    "loslos_inner",     # |H_k,LOS . H_l,LOS^H|^2
    "losnlos_inner",    # |H_k,LOS . H_l,NLOS^H|^2
    "nloslos_inner",    # |H_k,NLOS . H_l,LOS^H|^2
    "nlosnlos_inner",   # |H_k,NLOS . H_l,NLOS^H|^2
)

PHASE_KINDS = ("equal", "random", "codebook")
SWEEP_KINDS = ("none", "n", "m", "kappa")


class DegenerateChannelError(ArithmeticError):
    """A cascade channel with zero norm."""


@dataclass(frozen=True)
class PhaseMode:
    kind: str = "equal"
    value: float = math.pi / 6  # only used by "equal"

    def __post_init__(self):
        if self.kind not in PHASE_KINDS:
            raise ConfigError(f"phase_mode: unknown mode {self.kind!r}, expected one of {PHASE_KINDS}")

    def label(self) -> str:
        return f"equal({self.value:.9g})" if self.kind == "equal" else self.kind


@dataclass(frozen=True)
class Sweep:
    kind: str = "none"
    values: tuple = ()

    def __post_init__(self):
        if self.kind not in SWEEP_KINDS:
            raise ConfigError(f"sweep: unknown sweep {self.kind!r}, expected one of {SWEEP_KINDS}")
        if self.kind != "none" and not self.values:
            raise ConfigError("sweep_values: sweep list must be non-empty")


def _is_pow2(x):
    return x >= 1 and x & (x - 1) == 0


def square_side(n: int) -> int:
    side = math.isqrt(n)
    if side * side != n:
        raise ConfigError(f"sweep_values: N={n} is not a perfect square (square UPA required)")
    return side


@dataclass(frozen=True)
class ExperimentConfig:
    params: SystemParams = field(default_factory=SystemParams)
    realizations: int = 10_000
    phase_mode: PhaseMode = field(default_factory=PhaseMode)
    master_seed: int = 42
    sweep: Sweep = field(default_factory=Sweep)
    workers: int = 1

    def __post_init__(self):
        if self.realizations < 2:
            raise ConfigError("realizations: must be >= 2")
        if self.workers < 1:
            raise ConfigError("workers: must be >= 1")
        points = self.point_params()
        if self.phase_mode.kind == "codebook":
            for p in points:
                g = p.geometry
                if not (_is_pow2(g.n1) and _is_pow2(g.n2)):
                    key = "sweep_values" if self.sweep.kind == "n" else "n1"
                    raise ConfigError(
                        f"{key}: codebook mode needs power-of-two array sides, got {g.n1}x{g.n2}")

    def point_params(self) -> list[SystemParams]:
        """Scenario parameters of each sweep point (one entry without a sweep)."""
        p = self.params
        kind, values = self.sweep.kind, self.sweep.values
        if kind == "none":
            return [p]
        if kind == "n":
            out = []
            for n in values:
                side = square_side(int(n))
                out.append(replace(p, geometry=replace(p.geometry, n1=side, n2=side)))
            return out
        if kind == "m":
            return [replace(p, geometry=replace(p.geometry, m=int(m))) for m in values]
        return [replace(p, kappa=float(k)) for k in values]

    def at_point(self, index: int) -> "ExperimentConfig":
        return replace(self, params=self.point_params()[index], sweep=Sweep())


def empirical_corr(hk, hl) -> float:
    """|H_k . H_l^H| / (||H_k|| ||H_l||), clipped to [0, 1] against rounding."""
    hk = np.asarray(getattr(hk, "full", hk))
    hl = np.asarray(getattr(hl, "full", hl))
    nk, nl = np.linalg.norm(hk), np.linalg.norm(hl)
    if nk == 0.0 or nl == 0.0:
        raise DegenerateChannelError("zero-norm cascade channel")
    return min(abs(np.vdot(hl, hk)) / (nk * nl), 1.0)


# Per-realization sample layout.
_N_REAL = 2 + len(COMPONENTS) + len(CONJUGATE_PAIRS)
_RHO, _RHO_SQ = 0, 1
_COMP0 = 2
_PAIR0 = 2 + len(COMPONENTS)


def _realization_samples(hk: CascadeChannel, hl: CascadeChannel):
    """Real samples in the fixed layout plus the complex LOS/NLOS cross term of user k."""
    parts_k = (hk.los_part, hk.nlos_part)
    parts_l = (hl.los_part, hl.nlos_part)
    # ip[x][y] = H_k^x . H_l^y^H ; that of (H_l^z, H_k^w) is conj(ip[w][z])
    ip = [[np.vdot(parts_l[y], parts_k[x]) for y in (0, 1)] for x in (0, 1)]
    out = np.empty(_N_REAL)
    if hk.full.shape[0] == 1:
        rho = 1.0  # every pair of nonzero scalars is collinear
        empirical_corr(hk, hl)
    else:
        rho = empirical_corr(hk, hl)
    out[_RHO] = rho
    out[_RHO_SQ] = rho * rho
    out[_COMP0 + 0] = np.vdot(hk.los_part, hk.los_part).real
    out[_COMP0 + 1] = np.vdot(hk.nlos_part, hk.nlos_part).real
    out[_COMP0 + 2] = abs(ip[0][0]) ** 2
    out[_COMP0 + 3] = abs(ip[0][1]) ** 2
    out[_COMP0 + 4] = abs(ip[1][0]) ** 2
    out[_COMP0 + 5] = abs(ip[1][1]) ** 2
    for j, (t, _) in enumerate(CONJUGATE_PAIRS):
        b = t - 1
        x, y, z, w = (b >> 3) & 1, (b >> 2) & 1, (b >> 1) & 1, b & 1
        term = ip[x][y] * np.conj(ip[w][z])
        out[_PAIR0 + j] = 2.0 * term.real  # term + conj(term)
    cross = np.vdot(hk.nlos_part, hk.los_part)
    return out, complex(cross)


class _PointSimulator:
    def __init__(self, config: ExperimentConfig, family: int):
        self.params = config.params
        self.mode = config.phase_mode
        self.seed = config.master_seed
        self.family = family
        n = self.params.n
        self.fixed_p = equal_phase(n, self.mode.value) if self.mode.kind == "equal" else None
        if self.mode.kind == "codebook":
            g = self.params.geometry
            self.codebook = build_codebook(g.n1, g.n2)
            self.cb_matrix = self.codebook.matrix()

    def one(self, r: int):
        stream = RandomStream(self.seed, self.family, r)
        params = self.params
        g = sample_bs_ris(params, stream.spawn(0))
        h_k = sample_ris_ue(params, params.paths_k, stream.spawn(1))
        h_l = sample_ris_ue(params, params.paths_l, stream.spawn(2))
        if self.mode.kind == "equal":
            p = self.fixed_p
        elif self.mode.kind == "random":
            p = random_phase(params.n, stream.spawn(3))
        else:
            p = codebook_select(self.codebook, g, h_k, h_l, matrix=self.cb_matrix)
        return _realization_samples(cascade(h_k, p, g), cascade(h_l, p, g))

    def block(self, indices):
        real = np.empty((len(indices), _N_REAL))
        cplx = np.empty(len(indices), dtype=complex)
        for j, r in enumerate(indices):
            real[j], cplx[j] = self.one(r)
        return real, cplx


@dataclass
class CorrelationStats:
    rho: StatAccumulator = field(default_factory=StatAccumulator)
    rho_sq: StatAccumulator = field(default_factory=StatAccumulator)
    components: dict = field(default_factory=lambda: {c: StatAccumulator() for c in COMPONENTS})
    pairs: dict = field(default_factory=lambda: {p: StatAccumulator() for p in CONJUGATE_PAIRS})
    los_nlos_cross: ComplexAccumulator = field(default_factory=ComplexAccumulator)
    min_rho: float = math.inf
    max_rho: float = -math.inf
    min_component: float = math.inf

    @property
    def count(self) -> int:
        return self.rho.count

    def add_block(self, real: np.ndarray, cplx: np.ndarray):
        for row, z in zip(real, cplx):
            self.rho.add(row[_RHO])
            self.rho_sq.add(row[_RHO_SQ])
            for j, c in enumerate(COMPONENTS):
                self.components[c].add(row[_COMP0 + j])
            for j, p in enumerate(CONJUGATE_PAIRS):
                self.pairs[p].add(row[_PAIR0 + j])
            self.los_nlos_cross.add(z)
        if len(real):
            self.min_rho = min(self.min_rho, float(real[:, _RHO].min()))
            self.max_rho = max(self.max_rho, float(real[:, _RHO].max()))
            self.min_component = min(self.min_component, float(real[:, _COMP0:_PAIR0].min()))

    def max_abs_pair_mean(self) -> float:
        return max(abs(a.mean) for a in self.pairs.values())


def _chunks(n, parts):
    bounds = np.linspace(0, n, parts + 1).astype(int)
    return [range(a, b) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def run_point(config: ExperimentConfig, family: int = 0) -> CorrelationStats:
    """Simulate ``config.realizations`` independent channel draws at one scenario."""
    if config.sweep.kind != "none":
        raise ConfigError("sweep: run_point needs sweep = none")
    sim = _PointSimulator(config, family)
    stats = CorrelationStats()
    n = config.realizations
    # Fixed-size blocks keep the reduction order independent of the worker count.
    blocks = _chunks(n, max(1, min(n, 64)))
    if config.workers == 1:
        results = map(sim.block, blocks)
    else:
        pool = ThreadPoolExecutor(max_workers=config.workers)
        results = pool.map(sim.block, blocks)
    try:
        for real, cplx in results:
            stats.add_block(real, cplx)
    finally:
        if config.workers != 1:
            pool.shutdown()
    return stats


@dataclass(frozen=True)
class SweepPoint:
    value: float
    params: SystemParams
    stats: CorrelationStats
    prediction: analytics.CorrelationPrediction


def run_sweep(config: ExperimentConfig) -> list[SweepPoint]:
    """Run every sweep point with its own stream family and pair it with the closed form."""
    if config.sweep.kind == "none":
        raise ConfigError("sweep: run_sweep needs a sweep")
    out = []
    for i, (value, params) in enumerate(zip(config.sweep.values, config.point_params())):
        stats = run_point(config.at_point(i), family=i)
        pred = analytics.predict(params.m, params.n, params.kappa)
        out.append(SweepPoint(value, params, stats, pred))
    return out


@dataclass(frozen=True)
class ComponentRow:
    n: int
    component: str
    simulated_mean: float
    simulated_se: float
    theory_mean: float


def component_theory(params: SystemParams) -> dict:
    Lk, Ll, n, m, k = params.paths_k, params.paths_l, params.n, params.m, params.kappa
    return {
        "los_power": analytics.mean_los_power(Lk, n, k),
        "nlos_power": analytics.mean_nlos_power(Lk, m, k),
        "loslos_inner": analytics.inner_power_loslos(Lk, Ll, n, k),
        "losnlos_inner": analytics.inner_power_losnlos(Lk, Ll, n, k),
        "nloslos_inner": analytics.inner_power_losnlos(Lk, Ll, n, k),
        "nlosnlos_inner": analytics.inner_power_nlosnlos(Lk, Ll, m, k),
    }


def component_rows(point: SweepPoint) -> list[ComponentRow]:
    theory = component_theory(point.params)
    n = point.params.n
    rows = [
        ComponentRow(n, c, point.stats.components[c].mean, point.stats.components[c].sem, theory[c])
        for c in COMPONENTS
    ]
    cross = point.stats.los_nlos_cross
    rows.append(ComponentRow(n, "los_nlos_cross_abs_mean", abs(cross.mean), cross.sem, 0.0))
    worst = max(CONJUGATE_PAIRS, key=lambda p: abs(point.stats.pairs[p].mean))
    acc = point.stats.pairs[worst]
    rows.append(ComponentRow(n, "conjugate_pair_max_abs_mean", abs(acc.mean), acc.sem, 0.0))
    return rows


def component_power_report(config: ExperimentConfig):
    """Simulated vs closed-form component powers for every N of an N sweep.

    Returns ``(rows, points)``.
    """
    if config.sweep.kind != "n":
        raise ConfigError("sweep: component report needs an N sweep")
    points = run_sweep(config)
    rows = [row for pt in points for row in component_rows(pt)]
    return rows, points


def with_geometry(params: SystemParams, **kw) -> SystemParams:
    return replace(params, geometry=replace(params.geometry, **kw))


def default_params(n1=20, n2=20, m=2, kappa=5.0, paths_k=3, paths_l=3, aod=None) -> SystemParams:
    return SystemParams(ArrayGeometry(n1=n1, n2=n2, m=m), kappa=kappa,
                        paths_k=paths_k, paths_l=paths_l, aod=aod)
