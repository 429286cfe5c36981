"""Hofstadter butterfly and the labels of its gaps.

Run with ``python3 demos/04_hofstadter_gap_labels.py``. Saves the butterfly
as a PNG when matplotlib is available.
"""

# %%
import numpy as np

from nctorus import butterfly_dataset, gap_labels, spectrum_sweep

# %% [markdown]
# At lam = p/q, H = U + U* + V + V* is a family of q x q matrices over the
# Bloch torus. The IDS inside each gap is an element of Z + (p/q) Z.

# %%
for p, q in [(1, 3), (2, 5), (3, 8), (5, 13)]:
    labels = gap_labels(spectrum_sweep(p, q, 1.0, 32))
    print(f"{p}/{q}:", [(lab.k0.m, lab.k0.n) for lab in labels])

# %% [markdown]
# Along the convergents of the golden mean the large gaps keep their labels.

# %%
for p, q in [(2, 3), (3, 5), (5, 8), (8, 13), (13, 21), (21, 34)]:
    labs = gap_labels(spectrum_sweep(p, q, 1.0, 16), min_gap_width=0.2)
    print(f"{p:2d}/{q:2d}", sorted((lab.k0.m, lab.k0.n) for lab in labs))

# %%
samples = butterfly_dataset(30, 1.0, 4)
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 6))
    for s in samples:
        ax.plot(s.eigenvalues, np.full(s.eigenvalues.size, s.p / s.q), ",k")
    ax.set_xlabel("energy")
    ax.set_ylabel("lambda")
    fig.savefig("butterfly.png", dpi=150)
    print("wrote butterfly.png")
print(len(samples), "rational angles,", sum(s.eigenvalues.size for s in samples), "eigenvalues")
