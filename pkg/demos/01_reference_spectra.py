# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Reference spectra
#
# The clamped problems on an interval have no closed form beyond l = 1, so the
# solver uses a Galerkin basis x^l (1-x)^l P_j(2x-1) whose Gram matrices are
# exact rationals. Here we compare its output with the few known answers.

# %%
import math

import numpy as np
from scipy.optimize import brentq

from polybounds.solver import (
    disk_clamped_plate_spectrum,
    interval_buckling_spectrum,
    interval_polyharmonic_spectrum,
    rectangle_spectrum,
    sphere_closed_spectrum,
)

# %% [markdown]
# ## The string, l = 1
# Eigenvalues are (i pi)^2.

# %%
s = interval_polyharmonic_spectrum(1, N=30, count=5)
exact = [(i * math.pi) ** 2 for i in range(1, 6)]
print(s.source, np.array(s.values) / np.array(exact) - 1)

# %% [markdown]
# ## The clamped beam, l = 2
# Here lambda = mu^4 with cos(mu) cosh(mu) = 1.

# %%
beam = interval_polyharmonic_spectrum(2, N=40, count=3)
mus = [brentq(lambda m: math.cos(m) * math.cosh(m) - 1, (j + 0.5) * math.pi - 1, (j + 0.5) * math.pi + 1) for j in (1, 2, 3)]
for lam, mu in zip(beam.values, mus):
    print(f"{lam:.10f}  {mu**4:.10f}")

# %% [markdown]
# ## Buckling
# 1 - cos(2 pi x) is clamped and gives Lambda_1 = 4 pi^2 exactly.

# %%
buck = interval_buckling_spectrum(2, count=3)
print(buck.kind.value, buck.values[0], 4 * math.pi**2)

# %% [markdown]
# ## Two dimensions
# Unit square (tensor-product Galerkin) and the clamped disk (Bessel roots).

# %%
sq = rectangle_spectrum(1, 1.0, 1.0, N=30, count=6)
print(np.round(np.array(sq.values) / math.pi**2, 10))

plate = rectangle_spectrum(2, 1.0, 1.0, N=25, count=3)
print("square plate", plate.values)

disk = disk_clamped_plate_spectrum(count=6)
print("disk plate", np.round(disk.values, 4))

# %% [markdown]
# ## The closed sphere
# Levels m(m+n-1), repeated by the dimension of the harmonic space.

# %%
print(sphere_closed_spectrum(2, 1, 9).values)
print(sphere_closed_spectrum(3, 2, 6).values)
