"""
Monte Carlo against the approximation
=====================================

Simulated E[rho^2] and E[rho] next to the closed form as the RIS grows, and
the three phase policies side by side.  Takes a minute or two.
"""

# %%
from riscorr.experiments import ExperimentConfig, PhaseMode, Sweep, default_params, run_point, run_sweep

cfg = ExperimentConfig(params=default_params(m=2, kappa=5.0), realizations=10_000,
                       sweep=Sweep("n", (16, 64, 256, 1024)))
for pt in run_sweep(cfg):
    s, pr = pt.stats, pt.prediction
    print(f"N={pt.params.n:5d}  E[rho^2] sim {s.rho_sq.mean:.4f}+-{s.rho_sq.sem:.4f}  theory {pr.mean_rho_sq:.4f}"
          f"   E[rho] sim {s.rho.mean:.4f}  bound {pr.mean_rho_upper:.4f}")

# %%
# The phase configuration does not matter.
for mode in (PhaseMode("equal"), PhaseMode("random"), PhaseMode("codebook")):
    stats = run_point(ExperimentConfig(params=default_params(8, 8, 2), realizations=5_000, phase_mode=mode))
    print(f"{mode.kind:9s} E[rho^2] = {stats.rho_sq.mean:.4f} +- {stats.rho_sq.sem:.4f}")
