"""The polynomial basis f_n(t) = C_n^{(2)}(t/2) on [-2, 2] and series in it.

These rescaled Gegenbauer polynomials diagonalize the operator calculus in
:mod:`guespec.operators`:

    recurrence   f_{n+1} = ((n+2) t f_n - (n+3) f_{n-1}) / (n+1),
                 f_0 = 1, f_1 = 2t
    weighted orthogonality
                 int_{-2}^{2} f_n f_m (4 - t^2)^{3/2} dt = 2 pi (n+1)(n+3) delta_{nm}
    semicircle averages
                 (1/2pi) int_{-2}^{2} f_n sqrt(4 - t^2) dt = 1 (n even), 0 (n odd)

so the semicircle average of a series is simply the sum of its
even-indexed coefficients.

Entire functions of order <= 2 and finite type sigma admit rapidly
decaying expansions in this basis; ``expand_entire`` converts truncated
Taylor data, certifies a tail bound on the band |z| <= 3 with the nominal
envelope |f_n| <= 2 * 3^n, and rejects coefficient growth inconsistent
with the declared type.  Note the envelope is an honest bound only on the
real interval; ``growth_bound_report`` measures (and reports, rather than
hides) how far the complex-circle maxima exceed it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

#: Degree up to which Taylor <-> basis conversion runs in exact rationals.
EXACT_CONVERSION_DEGREE = 40

#: Slack constant absorbed into the coefficient growth check (enters as
#: GROWTH_SLACK**(2/n), which tends to 1).
GROWTH_SLACK = 1e8

_GROWTH_FLOOR = 10  # indices below this are absorbed into the constant


def basis_values(order: int, t) -> np.ndarray:
    """f_0(t) .. f_order(t); t may be real or complex, scalar or array."""
    if order < 0:
        raise ValueError("order must be >= 0")
    t = np.asarray(t)
    dtype = np.result_type(t.dtype, np.float64)
    out = np.zeros((order + 1,) + t.shape, dtype=dtype)
    out[0] = 1.0
    if order >= 1:
        out[1] = 2.0 * t
    for n in range(1, order):
        out[n + 1] = ((n + 2) * t * out[n] - (n + 3) * out[n - 1]) / (n + 1)
    return out


def basis_with_derivatives(order: int, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(f_n, f_n', f_n'') for n = 0..order by the differentiated recurrence."""
    if order < 0:
        raise ValueError("order must be >= 0")
    t = np.asarray(t)
    dtype = np.result_type(t.dtype, np.float64)
    shape = (order + 1,) + t.shape
    f = np.zeros(shape, dtype=dtype)
    df = np.zeros(shape, dtype=dtype)
    d2f = np.zeros(shape, dtype=dtype)
    f[0] = 1.0
    if order >= 1:
        f[1] = 2.0 * t
        df[1] = 2.0
    for n in range(1, order):
        f[n + 1] = ((n + 2) * t * f[n] - (n + 3) * f[n - 1]) / (n + 1)
        df[n + 1] = ((n + 2) * (f[n] + t * df[n]) - (n + 3) * df[n - 1]) / (n + 1)
        d2f[n + 1] = ((n + 2) * (2.0 * df[n] + t * d2f[n]) - (n + 3) * d2f[n - 1]) / (n + 1)
    return f, df, d2f


def evaluate_series(coefficients, t):
    """Value of sum_n a_n f_n(t)."""
    a = np.asarray(coefficients)
    basis = basis_values(len(a) - 1, t)
    return np.tensordot(a, basis, axes=(0, 0))


def semicircle_functional(coefficients) -> float:
    """Semicircle average (1/2pi) int g sqrt(4-t^2) dt = sum of even coefficients."""
    a = np.asarray(coefficients, dtype=float)
    return float(a[::2].sum())


def normalization_check(n: int, m: int) -> float:
    """Quadrature value of int f_n f_m (4 - t^2)^{3/2} dt on [-2, 2].

    Equals 2 pi (n+1)(n+3) when n == m and 0 otherwise; computed by an
    exact-degree rule so deviations expose basis evaluation errors, not
    quadrature ones.
    """
    from .quadrature import integrate_gegenbauer2

    if n < 0 or m < 0:
        raise ValueError("orders must be >= 0")
    order = max(n, m)

    def integrand(t):
        f = basis_values(order, t)
        return f[n] * f[m]

    count = (n + m + 2) // 2 + 2
    return float(integrate_gegenbauer2(integrand, count))


def _monomial_columns(degree: int) -> list[list[Fraction]]:
    """cols[n] = exact monomial coefficients of f_n (length n+1)."""
    cols = [[Fraction(1)]]
    if degree >= 1:
        cols.append([Fraction(0), Fraction(2)])
    for n in range(1, degree):
        nxt = [Fraction(0)] * (n + 2)
        for j, c in enumerate(cols[n]):
            nxt[j + 1] += Fraction(n + 2) * c
        for j, c in enumerate(cols[n - 1]):
            nxt[j] -= Fraction(n + 3) * c
        cols.append([c / (n + 1) for c in nxt])
    return cols


def taylor_to_basis(coefficients, exact: bool = False):
    """Basis coefficients of the polynomial sum_j alpha_j t^j.

    Triangular back-substitution; exact rationals through degree
    EXACT_CONVERSION_DEGREE, float64 beyond (verified adequate for the
    slowly growing inputs this package feeds it).  With exact=True the
    rationals are returned as a Fraction list instead of being rounded.
    """
    coeffs = list(coefficients)
    if not coeffs:
        raise ValueError("empty coefficient vector")
    degree = len(coeffs) - 1
    if degree <= EXACT_CONVERSION_DEGREE:
        cols = _monomial_columns(degree)
        rem = [Fraction(c) for c in coeffs]
        out = [Fraction(0)] * (degree + 1)
        for n in range(degree, -1, -1):
            out[n] = rem[n] / cols[n][n]
            for j, c in enumerate(cols[n]):
                rem[j] -= out[n] * c
        if exact:
            return out
        return np.array([float(v) for v in out])
    if exact:
        raise ValueError(f"exact conversion capped at degree {EXACT_CONVERSION_DEGREE}")
    cols = [[float(c) for c in col] for col in _monomial_columns(degree)]
    rem = [float(c) for c in coeffs]
    out = [0.0] * (degree + 1)
    for n in range(degree, -1, -1):
        out[n] = rem[n] / cols[n][n]
        for j, c in enumerate(cols[n]):
            rem[j] -= out[n] * c
    return np.array(out)


def basis_to_taylor(coefficients, exact: bool = False):
    """Monomial coefficients of sum_n a_n f_n (inverse of taylor_to_basis)."""
    coeffs = list(coefficients)
    if not coeffs:
        raise ValueError("empty coefficient vector")
    degree = len(coeffs) - 1
    if degree <= EXACT_CONVERSION_DEGREE:
        cols = _monomial_columns(degree)
        out = [Fraction(0)] * (degree + 1)
        for n, a in enumerate(coeffs):
            fa = Fraction(a)
            for j, c in enumerate(cols[n]):
                out[j] += fa * c
        if exact:
            return out
        return np.array([float(v) for v in out])
    if exact:
        raise ValueError(f"exact conversion capped at degree {EXACT_CONVERSION_DEGREE}")
    cols = [[float(c) for c in col] for col in _monomial_columns(degree)]
    out = np.zeros(degree + 1)
    for n, a in enumerate(coeffs):
        for j, c in enumerate(cols[n]):
            out[j] += float(a) * c
    return out


@dataclass(frozen=True)
class TaylorSeries:
    """Truncated Taylor coefficients plus a declared order-2 growth type.

    type_hint = sigma means the represented entire function satisfies
    |f(z)| <= C exp(sigma |z|^2); sigma = 0 declares effectively
    polynomial data (any finite vector qualifies).
    """

    coefficients: np.ndarray
    type_hint: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coefficients", np.asarray(self.coefficients, dtype=float))
        if self.type_hint < 0:
            raise ValueError("type_hint must be >= 0")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class BasisSeries:
    """Coefficients in the f_n basis with a certified real-band tail bound.

    tail_bound dominates the value dropped by truncation on the band
    |z| <= 3 under the nominal envelope |f_n| <= 2 * 3^n (plus, for
    type_hint > 0, a model tail for coefficients beyond the input degree).
    """

    coefficients: np.ndarray
    tail_bound: float = 0.0
    type_hint: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coefficients", np.asarray(self.coefficients, dtype=float))

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t):
        return evaluate_series(self.coefficients, t)


def estimate_order2_type(coefficients) -> float:
    """Largest implied order-2 type (n / 2e) |alpha_n|^(2/n) over n >= 10."""
    best = 0.0
    for n, a in enumerate(np.asarray(coefficients, dtype=float)):
        if n < _GROWTH_FLOOR or a == 0.0:
            continue
        best = max(best, (n / (2.0 * math.e)) * abs(a) ** (2.0 / n))
    return best


def expand_entire(series: TaylorSeries, tol: float = 1e-12) -> BasisSeries:
    """Convert Taylor data of an order-<=2 entire function to the f_n basis.

    Checks the coefficient growth |alpha_n| <= C (2 e sigma / n)^{n/2}
    implied by the declared type (first offending index named in the
    error), converts exactly, then trims trailing coefficients whose
    band-envelope contribution fits inside tol, recording the certified
    tail bound.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    sigma = series.type_hint
    alpha = series.coefficients
    if sigma > 0:
        for n in range(_GROWTH_FLOOR, len(alpha)):
            a = abs(alpha[n])
            if a == 0.0:
                continue
            implied = (n / (2.0 * math.e)) * a ** (2.0 / n)
            if implied > sigma * GROWTH_SLACK ** (2.0 / n):
                raise ValueError(
                    f"coefficient index {n} implies order-2 type {implied:.4g}, "
                    f"inconsistent with declared type {sigma:.4g}"
                )
    a = taylor_to_basis(alpha)
    # Trim trailing terms while their band contribution stays inside tol/2.
    dropped = 0.0
    top = len(a) - 1
    while top > 0:
        contribution = abs(a[top]) * 2.0 * 3.0 ** top
        if dropped + contribution > tol / 2.0:
            break
        dropped += contribution
        top -= 1
    tail = dropped
    if sigma > 0:
        tail += _model_tail(a, sigma)
    if tail > tol:
        raise ValueError(
            f"certified tail bound {tail:.3e} exceeds requested tolerance {tol:.3e}; "
            "supply more Taylor terms"
        )
    return BasisSeries(a[: top + 1].copy(), tail_bound=tail, type_hint=sigma)


def _model_tail(a: np.ndarray, sigma: float) -> float:
    """Band-envelope estimate for basis coefficients beyond the input degree.

    Calibrates the constant in |a_n| <= C (8 e sigma / n)^{n/2} on the
    computed upper half of the vector, then sums the envelope terms
    2 * 3^n * C (8 e sigma / n)^{n/2} past the end (in logs; the terms
    decay superexponentially once n > 72 e sigma).
    """
    degree = len(a) - 1
    log_c = -math.inf
    for n in range(max(_GROWTH_FLOOR, degree // 2), degree + 1):
        if a[n] == 0.0:
            continue
        log_c = max(log_c, math.log(abs(a[n])) - 0.5 * n * (math.log(8 * math.e * sigma) - math.log(n)))
    if log_c == -math.inf:
        return 0.0
    total = 0.0
    for n in range(degree + 1, degree + 1 + 400):
        log_term = log_c + 0.5 * n * (math.log(8 * math.e * sigma) - math.log(n)) \
            + math.log(2.0) + n * math.log(3.0)
        term = math.exp(log_term) if log_term < 700 else math.inf
        total += term
        if total > 0 and term < total * 1e-18:
            break
    return total


@dataclass(frozen=True)
class NormParams:
    """Parameters of the weighted sup norm sup_n (n/K)^{c n} |a_n|.

    rate is c (must be >= 1/2), index_scale is K (> 0).  The n = 0 term
    contributes |a_0| (0^0 := 1).
    """

    rate: float
    index_scale: float

    def __post_init__(self):
        if self.rate < 0.5:
            raise ValueError("rate must be >= 1/2")
        if self.index_scale <= 0:
            raise ValueError("index_scale must be positive")


def log_basis_weight(n: int, params: NormParams) -> float:
    """log of (n/K)^{c n}; zero at n = 0."""
    if n == 0:
        return 0.0
    return params.rate * n * math.log(n / params.index_scale)


def series_norm(coefficients, params: NormParams) -> float:
    """sup_n (n/K)^{c n} |a_n| (computed in logs to dodge overflow)."""
    best = -math.inf
    for n, v in enumerate(np.asarray(coefficients, dtype=float)):
        if v == 0.0:
            continue
        best = max(best, math.log(abs(v)) + log_basis_weight(n, params))
    if best == -math.inf:
        return 0.0
    return math.exp(best) if best < 700 else math.inf


@dataclass(frozen=True)
class BoundReport:
    """Measured maxima of |f_n| and |f_n'| on a circle vs the nominal envelope.

    The envelope 2 * max(r,3)^n (3 * max(r,3)^n for the derivative) is not
    achieved on the complex circle for most orders; this report states the
    measured margin instead of asserting the envelope.
    """

    order: int
    radius: float
    samples: int
    max_value: float
    value_envelope: float
    max_derivative: float
    derivative_envelope: float

    @property
    def value_ok(self) -> bool:
        return self.max_value <= self.value_envelope

    @property
    def derivative_ok(self) -> bool:
        return self.max_derivative <= self.derivative_envelope


def growth_bound_report(order: int, radius: float, samples: int = 360) -> BoundReport:
    """Evaluate f_order and f_order' on |z| = radius and compare to envelopes."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    angles = 2.0 * math.pi * np.arange(samples) / samples
    z = radius * np.exp(1j * angles)
    f, df, _ = basis_with_derivatives(order, z)
    base = max(radius, 3.0)
    return BoundReport(
        order=order,
        radius=radius,
        samples=samples,
        max_value=float(np.max(np.abs(f[order]))),
        value_envelope=2.0 * base ** order,
        max_derivative=float(np.max(np.abs(df[order]))),
        derivative_envelope=3.0 * base ** order,
    )


def chebyshev_link_residual(order: int, t) -> np.ndarray:
    """Residual of d^2/dx^2 T_{order+2}(x/2) = ((order+2)/2) f_order(x).

    The Chebyshev side is evaluated by its own recurrence (with first and
    second derivatives carried along), independent of the f_n recurrence.
    """
    t = np.asarray(t, dtype=float)
    u = t / 2.0
    m = order + 2
    # T_k(u), T_k'(u), T_k''(u) via T_{k+1} = 2u T_k - T_{k-1}.
    tk_prev, tk = np.ones_like(u), u.copy()
    dk_prev, dk = np.zeros_like(u), np.ones_like(u)
    sk_prev, sk = np.zeros_like(u), np.zeros_like(u)
    for _ in range(1, m):
        tk_next = 2.0 * u * tk - tk_prev
        dk_next = 2.0 * tk + 2.0 * u * dk - dk_prev
        sk_next = 4.0 * dk + 2.0 * u * sk - sk_prev
        tk_prev, tk = tk, tk_next
        dk_prev, dk = dk, dk_next
        sk_prev, sk = sk, sk_next
    second = sk / 4.0  # chain rule for x -> x/2, twice
    f = basis_values(order, t)[order]
    return second - 0.5 * m * f
