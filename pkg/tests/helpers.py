"""Constants and hypothesis strategies shared across the test modules."""

import math

from hypothesis import strategies as st

from nctorus.algebra import NCTElement, RotationParameter

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# filled in by test_acceptance, printed by the terminal-summary hook
ACCEPTANCE_LINES: list[str] = []

coefficient = st.builds(
    complex,
    st.floats(-1, 1, allow_nan=False, allow_infinity=False),
    st.floats(-1, 1, allow_nan=False, allow_infinity=False),
).filter(lambda z: abs(z) >= 1e-6)  # keep products well above the pruning threshold
index = st.integers(-4, 4)

irrational_proxy = st.floats(0.01, 0.99, allow_nan=False).map(RotationParameter.from_float)
rational = st.integers(1, 30).flatmap(
    lambda q: st.integers(0, q - 1).filter(lambda p: math.gcd(p, q) == 1).map(lambda p: RotationParameter.rational(p, q))
)


def elements(lam, max_size=8):
    return st.dictionaries(st.tuples(index, index), coefficient, min_size=1, max_size=max_size).map(
        lambda d: NCTElement(lam, d)
    )


def element_tuples(k, lam_strategy=irrational_proxy, max_size=8):
    return lam_strategy.flatmap(lambda lam: st.tuples(*[elements(lam, max_size) for _ in range(k)]))
