"""Rotation orbits and leaves of the linear flow on the torus.

Run with ``python3 demos/03_kronecker_flow.py``.
"""

# %%
import math

import numpy as np

from nctorus import discrepancy, leaf_trace, orbit, three_gap_stats, transverse_measure_estimate
from nctorus.dynamics import golden

lam = golden()

# %% [markdown]
# N points of a rotation orbit cut the circle into arcs of at most three lengths.

# %%
for N in (10, 55, 89, 100, 1000):
    gaps = three_gap_stats(orbit(0.0, lam, N))
    print(f"N = {N:4d}  gaps = {[round(x, 6) for x in gaps]}")

# %% [markdown]
# Equidistribution: the star discrepancy of the golden orbit decays like log N / N.

# %%
for N in (10, 100, 1000, 10000):
    d = discrepancy(orbit(0.0, lam, N))
    print(f"N = {N:5d}  D* = {d:.5f}  N D* / log N = {N * d / math.log(N):.3f}")

print("hits in [0, 1/2):", transverse_measure_estimate(lam, (0.0, 0.5), 0.0, 10000))

# %% [markdown]
# A leaf of slope p/q closes after q wraps. A leaf of irrational slope never
# closes; its best returns come at the continued fraction denominators.

# %%
print("slope 3/8 closes after", leaf_trace("3/8", 0.1, 20).period, "wraps")
lt = leaf_trace(lam, 0.0, 700)
d = np.abs(lt.return_heights - np.round(lt.return_heights))
records = [k + 1 for k in range(len(d)) if d[k] == d[: k + 1].min()]
print("record returns at wraps", records)
print("closest return within 700 wraps:", lt.min_return_distance)
