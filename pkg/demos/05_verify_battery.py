# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # The verification matrix
#
# Every rule runs at every valid index on every spectrum of the built-in
# battery. A healthy run has no failures; a corrupted spectrum should not.

# %%
import collections
import time

from polybounds.verify import BUILTIN_SUITE, builtin_suite, entries_to_csv, verify_spectra

t0 = time.perf_counter()
spectra = builtin_suite()
m = verify_spectra(spectra, workers=4)
print(f"{time.perf_counter() - t0:.1f} s", m.summary)

# %%
per_rule = collections.Counter(e.rule for e in m.entries)
print(dict(per_rule))
tightest = sorted(m.entries, key=lambda e: e.report.slack)[:5]
for e in tightest:
    print(e.spectrum_id, e.rule, e.k, f"{e.report.slack:.2e}")

# %% [markdown]
# The tightest entries are the equality cases: k = 1 on the round sphere.
#
# ## Fault injection
# Multiply one eigenvalue by ten and the upper bounds catch it.

# %%
s = spectra["disk-l2"]
bad = s.with_values(list(s.values[:2]) + [10 * s.values[2]])
mb = verify_spectra({"disk-bad": bad})
print(mb.summary)
print(entries_to_csv(mb.failures()))
