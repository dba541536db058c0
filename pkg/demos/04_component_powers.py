"""
Component powers
================

Mean power of the LOS/NLOS pieces of one cascade channel and of the inner
product between two, simulated vs closed form.  NLOS terms stay flat in N;
LOS terms fall as 1/N and 1/N^2.

At small N the NLOS-NLOS inner power exceeds its closed form by a factor
(1 + M/N): the two users overlap through the shared NLOS matrix.
"""

# %%
from riscorr import analytics as an
from riscorr.experiments import ExperimentConfig, Sweep, component_power_report, default_params

cfg = ExperimentConfig(params=default_params(m=2, kappa=5.0), realizations=5_000,
                       sweep=Sweep("n", (4, 16, 64, 256)))
rows, _ = component_power_report(cfg)
for r in rows:
    print(f"N={r.n:4d} {r.component:28s} sim {r.simulated_mean:.5f}+-{r.simulated_se:.5f}  theory {r.theory_mean:.5f}")

# %%
for n in (4, 16, 64, 256):
    print(n, an.inner_power_nlosnlos(3, 3, 2, 5.0), an.inner_power_nlosnlos_exact(3, 3, n, 2, 5.0))
