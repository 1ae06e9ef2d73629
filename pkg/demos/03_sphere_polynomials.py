# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Sphere coefficients
#
# Domains in the unit sphere pick up lower-order terms whose weights are the
# coefficients of a polynomial F_l. It is built by a three-term recursion in
# exact rationals, and independently as the first member of a coupled pair
# (B_q, C_q). The two must agree.

# %%
from polybounds.bounds import sphere_explicit_bound_a, sphere_explicit_bound_b, sphere_yang_residual
from polybounds.solver import sphere_closed_spectrum
from polybounds.spherepoly import SphereCoefficients, bc_polys, f_poly

for n in (2, 3, 4):
    for l in (1, 2, 3, 4):
        assert f_poly(n, l) == bc_polys(n, l)[0]
        print(f"n={n} l={l}:  {f_poly(n, l)}")

# %%
print(SphereCoefficients.for_sphere(2, 3))

# %% [markdown]
# ## The equality case
# On the round S^2 with l = 1 and k = 1, the Yang-type relation is an equality
# and the power-sum bound returns lambda_2 = 2 on the nose.

# %%
s = sphere_closed_spectrum(2, 1, 10)
print(s.values)
print(sphere_yang_residual(s, 1), sphere_explicit_bound_a(s, 1), sphere_explicit_bound_b(s, 1))

# %%
for l in (1, 2, 3):
    s = sphere_closed_spectrum(3, l, 30)
    print(l, [round(sphere_explicit_bound_b(s, k) / s.values[k], 3) for k in (1, 5, 14, 29)])
