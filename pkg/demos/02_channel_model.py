"""
Sampling the channels
=====================

One draw of the shared BS-RIS channel and of two user channels, and the two
cascade channels they form for an equal-phase RIS.
"""

# %%
import numpy as np

from riscorr.channel import cascade, los_cascade_closed_form, sample_bs_ris, sample_ris_ue
from riscorr.experiments import default_params, empirical_corr
from riscorr.numerics import RandomStream
from riscorr.phases import equal_phase

params = default_params(n1=4, n2=4, m=2, kappa=5.0)
stream = RandomStream(2024, 0)

g = sample_bs_ris(params, stream.spawn(0))
h_k = sample_ris_ue(params, params.paths_k, stream.spawn(1))
h_l = sample_ris_ue(params, params.paths_l, stream.spawn(2))
print("AoA frequencies:", g.aoa, " AoD frequency:", round(g.phi_aod, 4))
print("||G_los||_F =", np.linalg.norm(g.g_los))

# %%
p = equal_phase(params.n, np.pi / 6)
H_k, H_l = cascade(h_k, p, g), cascade(h_l, p, g)
print("H_k =", np.round(H_k.full, 4))
print("LOS part via per-path array gains:", np.round(los_cascade_closed_form(h_k, p, g, 4, 4), 4))

# %%
print("rho =", empirical_corr(H_k, H_l))
