"""Canonical parameters and GL(2, Z) orbits.

Run with ``python3 demos/05_morita_orbits.py``.
"""

# %%
import math

from nctorus import canonical_parameter, morita_equivalent
from nctorus.ktheory import certified_expansion, linear_fractional

golden = (math.sqrt(5) - 1) / 2

# %% [markdown]
# lam and 1 - lam give isomorphic algebras, so every algebra has a parameter in [0, 1/2].

# %%
for x in ("0.7", "0.25", "13/10", golden):
    print(x, "->", canonical_parameter(x))

# %% [markdown]
# Only the first ~14 partial quotients of a double mean anything. The
# certified expansion keeps the terms shared by every real within 1e-15.

# %%
for name, x in [("golden", golden), ("sqrt2-1", math.sqrt(2) - 1), ("1/pi", 1 / math.pi)]:
    e = certified_expansion(x, 60)
    print(f"{name:8s} {len(e.terms)} certified terms: {list(e.terms[:12])} ...")

# %% [markdown]
# Two angles lie on one GL(2, Z) orbit when their expansions agree after a finite shift.

# %%
print("golden ~ 0.3819660113:", morita_equivalent(golden, 0.3819660113).equivalent)
print("golden ~ sqrt2 - 1:   ", morita_equivalent(golden, math.sqrt(2) - 1).equivalent)
x = 0.2718281828
y = linear_fractional([[3, 1], [2, 1]], x) % 1
r = morita_equivalent(x, y)
print(f"x = {x}, y = {float(y):.10f}: equivalent = {r.equivalent}, tails match at {r.witness}")
