"""
Closed-form correlation between two cascade channels
====================================================

How the approximate mean squared correlation depends on the BS array size M,
the RIS size N and the Rician factor kappa.
"""

# %%
import numpy as np

from riscorr import analytics as an

# %%
# The approximation only depends on M and the ratio kappa/N.
for M in (1, 2, 4, 8):
    row = [an.approx_mean_sq_corr(M, N, 5.0) for N in (4, 16, 64, 400)]
    print(f"M={M}:", "  ".join(f"{v:.4f}" for v in row))

# %%
# Large RIS or no line of sight: E[rho^2] -> 1/M and E[rho] <= sqrt(1/M).
print(an.approx_mean_sq_corr(2, 10 ** 9, 5.0), an.asymptotic_corr(2))
print(an.approx_mean_sq_corr(2, 64, 0.0))

# %%
# A strong line of sight keeps two users correlated on a small RIS.
kappa = an.db_to_linear(12)
print(f"M=2, N=25, kappa=12 dB: E[rho^2] ~ {an.approx_mean_sq_corr(2, 25, kappa):.3f}, "
      f"E[rho] <= {an.mean_corr_upper(2, 25, kappa):.3f}")

# %%
# The same number rebuilt from the six component powers; the path counts cancel.
for Lk, Ll in [(1, 1), (3, 3), (2, 7)]:
    print(Lk, Ll, an.mean_sq_corr_from_components(2, 25, kappa, Lk, Ll))

# %%
kappas = np.linspace(0, 10, 6)
print("N=4 :", np.round([an.approx_mean_sq_corr(2, 4, k) for k in kappas], 4))
print("N=64:", np.round([an.approx_mean_sq_corr(2, 64, k) for k in kappas], 4))
