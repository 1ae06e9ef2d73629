# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Auxiliary inequalities
#
# The bounds lean on a handful of elementary facts. Each one is a function that
# checks a single instance, plus a seeded random search for counterexamples.

# %%
import numpy as np

from polybounds.lemmas import (
    chebyshev_suite,
    moment_check,
    rearrangement_suite,
    reverse_chebyshev_suite,
    simplex_f,
    simplex_grid_min,
)
from polybounds.solver import eigenfunction_moments, interval_polyharmonic_eig

# %% [markdown]
# ## A minimum on the simplex
# sum z_i^2 / (1 + 4 z_i) is smallest at the barycentre, where it equals 1/(n+4).

# %%
for n in (1, 2, 3):
    best, arg = simplex_grid_min(n, 1e-3)
    print(n, best, 1 / (n + 4), arg)
print(simplex_f([0.7, 0.2, 0.1]))

# %%
print("counterexamples:", chebyshev_suite(), reverse_chebyshev_suite(), rearrangement_suite())

# %% [markdown]
# ## Moments of clamped eigenfunctions
# For u normalised in L^2 and mu_k = integral of (u^(k))^2, the sequence is
# log-convex and mu_k <= lambda^(k/l). The Gram matrices give mu_k exactly for
# the Galerkin eigenfunctions.

# %%
e, g = interval_polyharmonic_eig(3, 60, 5)
for i in range(5):
    ms = eigenfunction_moments(e, g, i, 3)
    ratios = [ms.mu[k] / ms.lam ** (k / 3) for k in range(4)]
    print(i, np.round(ratios, 4), moment_check(ms, 3))
