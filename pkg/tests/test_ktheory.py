import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nctorus.algebra import NCTElement, RotationParameter, adjoint, generators
from nctorus.errors import (
    AmbiguousResolutionError,
    DegenerateInputError,
    InvalidParameterError,
    NotAProjectionError,
    NotInRangeError,
    ParameterMismatchError,
    PrecisionError,
    UnsupportedParameterError,
)
from nctorus.ktheory import (
    CircleFunction,
    K0Class,
    MatrixProjection,
    build_rieffel_projection,
    canonical_parameter,
    certified_expansion,
    continued_fraction,
    grothendieck_difference,
    k0_from_trace,
    linear_fractional,
    morita_equivalent,
    projection_defect,
    rank_classify,
    rieffel_functions,
    trace_range_sample,
)

from .helpers import GOLDEN

# --- circle functions -----------------------------------------------------


def quad_fourier(func, k, n=1 << 14):
    # midpoint rule, independent of the FFT path
    t = (np.arange(n) + 0.5) / n
    return np.mean(func(t) * np.exp(-2j * np.pi * k * t))


def test_piecewise_linear_fourier_closed_form():
    f = CircleFunction.piecewise_linear([0.1, 0.3, 0.7], [0.0, 1.0, 0.25])
    c = f.fourier(6)
    for k in range(-6, 7):
        assert abs(c[k + 6] - quad_fourier(f, k)) < 1e-8


def test_fft_fourier_of_smooth_function():
    f = CircleFunction(lambda t: np.cos(2 * np.pi * t) ** 2)
    c = f.fourier(3)
    expected = np.array([0, 0.25, 0, 0.5, 0, 0.25, 0])
    assert np.allclose(c, expected, atol=1e-14)


def test_exponential_and_constant():
    c = CircleFunction.exponential(2).fourier(3)
    assert abs(c[5] - 1) < 1e-14
    assert np.sum(np.abs(c)) - 1 < 1e-12
    k = CircleFunction.constant(0.4)
    assert k.integral() == pytest.approx(0.4)
    assert np.allclose(k.fourier(4), [0, 0, 0, 0, 0.4, 0, 0, 0, 0])


def test_triangle_truncation_error_matches_tail_sum():
    # triangle with peak 1 at 1/2: c_k = -2 / (pi k)^2 for odd k, 0 for even k != 0
    f = CircleFunction.piecewise_linear([0.0, 0.5], [0.0, 1.0])
    M = 21
    ks = np.arange(M + 1, 200001)
    tail = 2 * np.sum(np.where(ks % 2 == 1, 2 / (np.pi * ks) ** 2, 0.0))
    assert abs(f.truncation_error(M) - tail) < 1e-5
    assert f.variation() == pytest.approx(2.0)


def test_piecewise_linear_rejects_bad_knots():
    with pytest.raises(InvalidParameterError):
        CircleFunction.piecewise_linear([0.5, 0.2], [0, 1])
    with pytest.raises(InvalidParameterError):
        CircleFunction.piecewise_linear([0.5], [0])


# --- Rieffel projection ---------------------------------------------------


@pytest.mark.parametrize("ramp", ["smooth", "linear"])
@pytest.mark.parametrize("lam", [GOLDEN, math.sqrt(2) - 1, 1 / math.pi])
def test_rieffel_function_identities(lam, ramp):
    eps = 0.05
    f, g = rieffel_functions(lam, eps, ramp)
    t = np.linspace(0, 1, 20001, endpoint=False)
    F, G = f(t), g(t)
    assert np.all((F >= 0) & (F <= 1))
    assert np.max(np.abs(G * g(t - lam))) < 1e-15
    assert np.max(np.abs(G * (F + f(t - lam)) - G)) < 1e-12
    assert np.max(np.abs(G**2 + g(t + lam) ** 2 - (F - F**2))) < 1e-12
    assert f.integral() == pytest.approx(lam, abs=1e-12)


@pytest.mark.parametrize("lam", [0.6180339887, 0.4142135624, 0.3183098862])
def test_rieffel_projection_defects(lam):
    r = build_rieffel_projection(lam, 0.05, 256)
    assert r.selfadjoint_defect <= 1e-9
    assert r.idempotent_defect <= 1e-3
    assert abs(r.trace - lam) <= 1e-9
    assert k0_from_trace(r.trace, lam, 5, 1e-6) == K0Class(0, 1, RotationParameter.from_float(lam))


def test_rieffel_defect_is_recomputed_from_element(golden):
    r = build_rieffel_projection(golden, 0.05, 256)
    p = r.element
    assert projection_defect(p) == (r.idempotent_defect, r.selfadjoint_defect)
    # the element has the shape g(U) V + f(U) + V* g(U)
    assert {n for _, n in p.support} == {-1, 0, 1}


def test_rieffel_defect_shrinks_with_order(golden):
    d = [build_rieffel_projection(golden, 0.05, M).idempotent_defect for M in (160, 320, 640)]
    assert d[0] > d[1] > d[2]


def test_linear_ramp_is_worse_than_smooth(golden):
    lin = build_rieffel_projection(golden, 0.05, 256, ramp="linear")
    smo = build_rieffel_projection(golden, 0.05, 256, ramp="smooth")
    assert abs(lin.trace - GOLDEN) < 1e-12
    assert lin.idempotent_defect > 10 * smo.idempotent_defect


def test_rieffel_input_validation(golden):
    with pytest.raises(UnsupportedParameterError):
        build_rieffel_projection(RotationParameter.rational(1, 3), 0.05, 256)
    with pytest.raises(InvalidParameterError):
        build_rieffel_projection(golden, 0.3, 256)
    with pytest.raises(InvalidParameterError):
        build_rieffel_projection(golden, 0.0, 256)
    with pytest.raises(InvalidParameterError):
        build_rieffel_projection(golden, 0.05, 100)
    with pytest.raises(InvalidParameterError):
        build_rieffel_projection(golden, 0.05, 256, ramp="cubic")


def test_projection_defect_by_hand(golden):
    U, _ = generators(golden)
    one = NCTElement.one(golden)
    p = 0.5 * (one + U + adjoint(U))
    # p^2 - p = 1/4 + U^2/4 + U*^2/4
    idem, sa = projection_defect(p)
    assert idem == pytest.approx(0.75, abs=1e-15)
    assert sa == 0
    assert projection_defect(one) == (0.0, 0.0)
    assert projection_defect(U)[1] == pytest.approx(2.0)


# --- K0 -------------------------------------------------------------------


def test_k0_class_arithmetic(golden):
    a = K0Class(1, 2, golden)
    b = K0Class(-3, 1, golden)
    assert a + b == K0Class(-2, 3, golden)
    assert a - b == K0Class(4, 1, golden)
    assert -a == K0Class(-1, -2, golden)
    assert (a + b).trace_value == pytest.approx(a.trace_value + b.trace_value)
    with pytest.raises(ParameterMismatchError):
        a + K0Class(0, 1, RotationParameter.from_float(0.3))


def test_k0_from_trace(golden):
    assert k0_from_trace(2 - GOLDEN, golden, 5, 1e-9) == K0Class(2, -1, golden)
    assert k0_from_trace(1.0, golden, 5, 1e-9) == K0Class(1, 0, golden)
    assert k0_from_trace(3 * GOLDEN - 1, golden, 5, 1e-9) == K0Class(-1, 3, golden)
    with pytest.raises(NotInRangeError):
        k0_from_trace(0.5, golden, 5, 1e-9)
    with pytest.raises(AmbiguousResolutionError):
        k0_from_trace(0.5, golden, 50, 0.05)


def test_k0_from_trace_rational():
    lam = RotationParameter.rational(2, 7)
    assert k0_from_trace(4 / 7, lam, 3, 1e-9) == K0Class(0, 2, lam)
    # n and n + 7 share a trace once the window allows both
    with pytest.raises(AmbiguousResolutionError):
        k0_from_trace(4 / 7, lam, 7, 1e-9)


def test_trace_range_quarter():
    assert trace_range_sample(RotationParameter.rational(1, 4), 4, 4) == [0.0, 0.25, 0.5, 0.75, 1.0]


def test_trace_range_golden_is_dense(golden):
    vals = trace_range_sample(golden, 50, 50)
    assert vals[0] == 0.0 and vals[-1] == 1.0
    assert np.max(np.diff(vals)) < 0.02
    # the brute-force set of m + n*lam in [0, 1]
    brute = {round(m + n * GOLDEN, 12) for m in range(-50, 51) for n in range(-50, 51) if -1e-12 <= m + n * GOLDEN <= 1 + 1e-12}
    assert len(vals) == len(brute)


def test_trace_range_validation(golden):
    with pytest.raises(InvalidParameterError):
        trace_range_sample(golden, 0, 3)


# --- matrix projections ---------------------------------------------------


def random_projection(rng, n, r):
    q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q[:, :r] @ q[:, :r].conj().T


def test_rank_classify(rng):
    for n, r in [(1, 0), (1, 1), (5, 2), (12, 7)]:
        P = random_projection(rng, n, r)
        assert rank_classify(P) == r
        W, _ = np.linalg.qr(rng.normal(size=(n, n)))
        assert rank_classify(W @ P @ W.T) == r


def test_stabilize_and_direct_sum(rng):
    P = MatrixProjection(random_projection(rng, 4, 3))
    Q = MatrixProjection(random_projection(rng, 3, 1))
    assert rank_classify(P.stabilize(5)) == 3
    assert P.stabilize(2).dim == 6
    assert rank_classify(P.direct_sum(Q)) == 4


def test_not_a_projection():
    with pytest.raises(NotAProjectionError):
        MatrixProjection(np.array([[1.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotAProjectionError):
        MatrixProjection(np.zeros((2, 3)))
    with pytest.raises(NotAProjectionError):
        rank_classify(2 * np.eye(2))


def test_grothendieck_difference(rng, golden):
    P = MatrixProjection(random_projection(rng, 6, 4))
    assert grothendieck_difference(P, 1) == 3
    assert grothendieck_difference(2, 5) == -3
    assert grothendieck_difference(K0Class(1, 1, golden), K0Class(0, 1, golden)) == K0Class(1, 0, golden)
    with pytest.raises(ParameterMismatchError):
        grothendieck_difference(K0Class(1, 1, golden), 1)
    with pytest.raises(InvalidParameterError):
        grothendieck_difference(-1, 0)


# --- canonical parameter and continued fractions --------------------------


def test_canonical_parameter_examples():
    assert canonical_parameter("0.7") == 0.3
    assert canonical_parameter(Fraction(7, 10)) == 0.3
    assert canonical_parameter(0.25) == 0.25
    assert canonical_parameter(-0.25) == 0.25
    assert canonical_parameter(3) == 0.0
    with pytest.raises(InvalidParameterError):
        canonical_parameter(float("inf"))
    with pytest.raises(InvalidParameterError):
        canonical_parameter("abc")


@given(st.fractions(), st.integers(-5, 5))
def test_canonical_parameter_invariances(x, n):
    c = canonical_parameter(x)
    assert 0 <= c <= 0.5
    assert canonical_parameter(1 - x) == c
    assert canonical_parameter(x + n) == c
    assert canonical_parameter(-x) == c


@given(st.integers(-(2**40), 2**40))
def test_canonical_parameter_dyadic_floats_exact(k):
    x = k / 2**20
    c = canonical_parameter(x)
    assert canonical_parameter(1.0 - x) == c
    assert canonical_parameter(x + 3.0) == c


def test_continued_fraction_exact():
    assert continued_fraction(Fraction(415, 93), 10) == [4, 2, 6, 7]
    assert continued_fraction("0.5", 10) == [0, 2]


def test_certified_expansion_of_golden():
    e = certified_expansion(GOLDEN, 60)
    assert len(e.terms) >= 30
    assert set(e.terms) == {1}
    for lo, hi in e.tails:
        assert lo <= hi
    # every complete quotient of the golden ratio is the golden ratio again
    for lo, hi in e.tails[:10]:
        assert lo - Fraction(1, 10**12) <= Fraction(GOLDEN) <= hi + Fraction(1, 10**12)


def test_certified_expansion_encloses_true_tail():
    # sqrt 2 - 1 = [0; 2, 2, 2, ...], every complete quotient is sqrt 2 - 1 again
    x = math.sqrt(2) - 1
    e = certified_expansion(x, 60)
    assert set(e.terms) == {2}
    true = Fraction(math.sqrt(2) - 1)
    for lo, hi in e.tails[:10]:
        assert lo - Fraction(1, 10**12) <= true <= hi + Fraction(1, 10**12)


def test_linear_fractional():
    assert linear_fractional([[1, 1], [0, 1]], Fraction(1, 3)) == Fraction(4, 3)
    assert linear_fractional([[0, 1], [1, 0]], Fraction(2, 5)) == Fraction(5, 2)
    with pytest.raises(InvalidParameterError):
        linear_fractional([[1, 0], [1, -1]], 1)


# --- Morita test ----------------------------------------------------------


def test_morita_golden_examples():
    assert morita_equivalent(GOLDEN, 0.3819660113)
    assert morita_equivalent(GOLDEN, 1 / (1 + GOLDEN))
    assert morita_equivalent(GOLDEN, 1 - GOLDEN)
    assert not morita_equivalent(GOLDEN, math.sqrt(2) - 1, depth=40)


def test_morita_accepts_strings_and_parameters(golden):
    r = morita_equivalent(golden, "0.3819660112501051")
    assert r.equivalent and r.witness is not None
    assert r.terms_lambda[:5] == (1, 1, 1, 1, 1)
    assert r.terms_mu[:3] == (2, 1, 1)


def random_gl2z(rng, steps=6):
    S = np.array([[0, 1], [1, 0]])
    M = np.eye(2, dtype=np.int64)
    for _ in range(steps):
        T = np.array([[1, int(rng.integers(1, 4))], [0, 1]])
        M = M @ T @ S
    return [[int(x) for x in row] for row in M]


def test_morita_random_orbit_images(rng):
    for _ in range(20):
        x = float(rng.uniform(0.05, 0.95))
        M = random_gl2z(rng)
        assert round(abs(np.linalg.det(np.array(M, dtype=float)))) == 1
        y = linear_fractional(M, x)
        y -= math.floor(y)
        assert morita_equivalent(x, y), (x, M)


def test_morita_inequivalent_quadratic_irrationals():
    # sqrt 3 - 1 = [0; 1, 2, 1, 2, ...] and sqrt 2 - 1 = [0; 2, 2, ...] have different periodic tails
    assert not morita_equivalent(math.sqrt(3) - 1, math.sqrt(2) - 1)
    assert not morita_equivalent(math.sqrt(3) - 1, GOLDEN)


def test_morita_validation():
    with pytest.raises(PrecisionError):
        morita_equivalent(GOLDEN, 0.3, depth=61)
    with pytest.raises(InvalidParameterError):
        morita_equivalent(GOLDEN, 1.2)
    with pytest.raises(DegenerateInputError):
        morita_equivalent(GOLDEN, 0.5)
    with pytest.raises(InvalidParameterError):
        morita_equivalent(GOLDEN, 0.3, depth=0)
