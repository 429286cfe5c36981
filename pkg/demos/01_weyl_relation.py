"""Twisted arithmetic and its matrix pictures.

Run with ``python3 demos/01_weyl_relation.py``.
"""

# %%
import numpy as np

from nctorus import generators, monomial, represent, truncated_rep, weyl_pair_rational
from nctorus.algebra import RotationParameter, adjoint
from nctorus.representations import commutator_trace_check, operator_norm_lower_bound

# %% [markdown]
# Products are kept in normal order U^m V^n. Moving V past U costs a phase.

# %%
lam = RotationParameter.from_float((5 ** 0.5 - 1) / 2)
U, V = generators(lam)
print("U V     =", U * V)
print("V U     =", V * U)
print("V^2 U^3 =", (V ** 2) * (U ** 3))

# %%
h = U + adjoint(U) + V + adjoint(V)
print("h* == h:", (adjoint(h) - h).l1_norm() == 0)
print("h^2 has", len((h * h).support), "terms")

# %% [markdown]
# At lam = p/q the relation is realized exactly by q x q clock and shift matrices.

# %%
w = weyl_pair_rational(2, 5)
omega = np.exp(2j * np.pi * 2 / 5)
print("max |uv - omega vu| =", np.abs(w.u_matrix @ w.v_matrix - omega * w.v_matrix @ w.u_matrix).max())
lam25 = RotationParameter.rational(2, 5)
print("trace of u^2 v^3 =", np.trace(represent(monomial(2, 3, lam=lam25), w)) / 5)

# %% [markdown]
# No finite pair can satisfy PQ - QP = c I with c != 0: the commutator is always traceless.

# %%
rng = np.random.default_rng(0)
P, Q = rng.normal(size=(2, 40, 40))
print("normalized |Tr[P, Q]| =", commutator_trace_check(P, Q))

# %% [markdown]
# Irrational lam has no finite picture. A band truncation of the regular
# representation gives lower bounds for the norm of h, which approach the
# edge of the almost Mathieu spectrum.

# %%
for N in (8, 32, 128, 256):
    print(f"N = {N:4d}  ||h|| >= {operator_norm_lower_bound(h, N):.6f}")
print("compressed u at N=3 is not unitary:")
print(np.round(truncated_rep(lam, 3).u_matrix.real).astype(int))
