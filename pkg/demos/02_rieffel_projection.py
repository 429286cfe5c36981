"""A projection of trace lam built from two functions of U.

Run with ``python3 demos/02_rieffel_projection.py``. Saves a plot of f and g
when matplotlib is available.
"""

# %%
import numpy as np

from nctorus import build_rieffel_projection, k0_from_trace, trace_range_sample
from nctorus.ktheory import rieffel_functions

lam = 0.6180339887
eps = 0.05

# %% [markdown]
# p = g(U) V + f(U) + V* g(U) is a projection when f and g satisfy three
# pointwise identities. Check them on a grid.

# %%
f, g = rieffel_functions(lam, eps)
t = np.linspace(0, 1, 4001, endpoint=False)
F, G = f(t), g(t)
print("g(t) g(t-lam)               ", np.abs(G * g(t - lam)).max())
print("g (f(t) + f(t-lam)) - g      ", np.abs(G * (F + f(t - lam)) - G).max())
print("g^2 + g(t+lam)^2 - (f - f^2) ", np.abs(G ** 2 + g(t + lam) ** 2 - F + F ** 2).max())

# %% [markdown]
# The element lives in the algebra once f and g are cut off at Fourier order M.
# Only the cutoff spoils idempotency, and smooth ramps make that small.

# %%
for ramp in ("linear", "smooth"):
    for M in (160, 256, 512):
        r = build_rieffel_projection(lam, eps, M, ramp=ramp)
        print(f"{ramp:6s} M={M:3d}  |p^2-p|_1 = {r.idempotent_defect:.2e}  |p-p*|_1 = {r.selfadjoint_defect:.1e}  trace = {r.trace:.12f}")

# %%
r = build_rieffel_projection(lam, eps, 256)
cls = k0_from_trace(r.trace, lam, 5, 1e-6)
print("K0 class of p:", (cls.m, cls.n))

# %% [markdown]
# Traces of projections fill Z + lam Z intersected with [0, 1]. For rational
# lam this is a finite set, for irrational lam it is dense.

# %%
print(trace_range_sample("1/4", 4, 4))
vals = trace_range_sample(lam, 50, 50)
print(len(vals), "values, largest gap", np.diff(vals).max())

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 3))
    ax.plot(t, F, label="f")
    ax.plot(t, G, label="g")
    ax.set_xlabel("t")
    ax.legend()
    fig.tight_layout()
    fig.savefig("rieffel_functions.png", dpi=120)
    print("wrote rieffel_functions.png")
