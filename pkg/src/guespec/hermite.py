"""Weighted Hermite frames and the exact eigenvalue density of GUE(N).

The ensemble is the N x N Hermitian matrix model with independent centred
Gaussian entries of variance 1/N (off-diagonal real and imaginary parts
1/(2N) each).  Its mean eigenvalue density p_N lives, up to Gaussian
tails, on [-2, 2] and is expressed through the orthonormal functions

    psi_k(x) = htilde_k(x) * exp(-N x^2 / 4),

where htilde_k is the degree-k Hermite polynomial orthonormal for the
weight exp(-N x^2 / 2).  All evaluations use the stable three-term
recurrence; no factorials or unnormalized polynomial values appear
anywhere on the floating-point path.

Supported range: 1 <= N <= 256.  Evaluations are accurate for |x| <= 12;
beyond that the weighted values underflow harmlessly to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_ENSEMBLE_SIZE = 256


def _check_size(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ValueError(f"ensemble size must be a positive integer, got {n!r}")
    if n > MAX_ENSEMBLE_SIZE:
        raise ValueError(f"ensemble size {n} above supported maximum {MAX_ENSEMBLE_SIZE}")


def normalized_hermite(n: int, k_max: int, x) -> np.ndarray:
    """Values htilde_0(x) .. htilde_{k_max}(x), vectorized over x.

    Recurrence: htilde_{k+1} = x sqrt(n/(k+1)) htilde_k - sqrt(k/(k+1)) htilde_{k-1},
    htilde_0 = (2 pi / n)^(-1/4).  Orthonormal for the weight exp(-n x^2 / 2).
    """
    _check_size(n)
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("evaluation points must be finite")
    out = np.zeros((k_max + 1,) + x.shape)
    out[0] = (2.0 * math.pi / n) ** -0.25
    if k_max >= 1:
        out[1] = x * math.sqrt(n) * out[0]
    for k in range(1, k_max):
        out[k + 1] = x * math.sqrt(n / (k + 1.0)) * out[k] - math.sqrt(k / (k + 1.0)) * out[k - 1]
    return out


def weighted_frame(n: int, k_max: int, x) -> tuple[np.ndarray, np.ndarray]:
    """psi_k(x) and psi_k'(x) for k = 0..k_max, vectorized over x.

    psi' follows the ladder psi_k' = sqrt(n k) psi_{k-1} - (n x / 2) psi_k.
    """
    _check_size(n)
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("evaluation points must be finite")
    psi = np.zeros((k_max + 1,) + x.shape)
    psi[0] = (2.0 * math.pi / n) ** -0.25 * np.exp(-n * x * x / 4.0)
    if k_max >= 1:
        psi[1] = x * math.sqrt(n) * psi[0]
    for k in range(1, k_max):
        psi[k + 1] = x * math.sqrt(n / (k + 1.0)) * psi[k] - math.sqrt(k / (k + 1.0)) * psi[k - 1]
    dpsi = np.zeros_like(psi)
    dpsi[0] = -(n * x / 2.0) * psi[0]
    for k in range(1, k_max + 1):
        dpsi[k] = math.sqrt(n * k) * psi[k - 1] - (n * x / 2.0) * psi[k]
    return psi, dpsi


def kernel_diag(n: int, x) -> np.ndarray:
    """K_N(x, x) = sum_{k<N} psi_k(x)^2, vectorized over x."""
    psi, _ = weighted_frame(n, n - 1, x)
    return (psi * psi).sum(axis=0)


def kernel(n: int, x: float, y: float, crossover: float = 1e-6) -> float:
    """Two-point correlation kernel K_N(x, y).

    Off the diagonal this is the Christoffel-Darboux ratio

        (psi_N(x) psi_{N-1}(y) - psi_{N-1}(x) psi_N(y)) / (x - y);

    within |x - y| <= crossover the limiting derivative form
    psi_N'(m) psi_{N-1}(m) - psi_N(m) psi_{N-1}'(m) at the midpoint m is
    used instead, so the value stays finite and continuous across the
    diagonal.  Symmetric in (x, y).
    """
    _check_size(n)
    x = float(x)
    y = float(y)
    if abs(x - y) <= crossover:
        m = 0.5 * (x + y)
        psi, dpsi = weighted_frame(n, n, np.float64(m))
        return float(dpsi[n] * psi[n - 1] - psi[n] * dpsi[n - 1])
    px, _ = weighted_frame(n, n, np.float64(x))
    py, _ = weighted_frame(n, n, np.float64(y))
    return float((px[n] * py[n - 1] - px[n - 1] * py[n]) / (x - y))


def density(n: int, x) -> np.ndarray:
    """Mean eigenvalue density p_N(x) = K_N(x, x) / N."""
    return kernel_diag(n, x) / n


def density_derivatives(n: int, x) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """p_N and its first three derivatives, all analytic (no differencing).

    Uses psi_k'' = (n^2 x^2/4 - n(k + 1/2)) psi_k together with the first
    derivative ladder; the third derivative differentiates that relation
    once more.
    """
    _check_size(n)
    x = np.asarray(x, dtype=float)
    psi, dpsi = weighted_frame(n, n - 1, x)
    k = np.arange(n, dtype=float).reshape((n,) + (1,) * x.ndim)
    osc = n * n * x * x / 4.0 - n * (k + 0.5)
    d2psi = osc * psi
    d3psi = (n * n * x / 2.0) * psi + osc * dpsi
    p0 = (psi * psi).sum(axis=0) / n
    p1 = 2.0 * (psi * dpsi).sum(axis=0) / n
    p2 = 2.0 * (dpsi * dpsi + psi * d2psi).sum(axis=0) / n
    p3 = 2.0 * (3.0 * dpsi * d2psi + psi * d3psi).sum(axis=0) / n
    return p0, p1, p2, p3


def ode_residual(n: int, x) -> np.ndarray:
    """Residual of p_N''' / N^2 + (4 - x^2) p_N' + x p_N, which vanishes
    identically for the exact density."""
    p0, p1, _, p3 = density_derivatives(n, x)
    x = np.asarray(x, dtype=float)
    return p3 / (n * n) + (4.0 - x * x) * p1 + x * p0


def hermite_values(n: int, order: int, x) -> list:
    """Unnormalized Hermite values h_0(x)..h_order(x) for weight exp(-n x^2/2).

    h_{k+1} = n x h_k - n k h_{k-1}, h_0 = 1.  Plain scalar arithmetic, so
    Fraction inputs stay exact.  These grow quickly; intended for moderate
    orders (translation identities, cross-checks).
    """
    _check_size(n)
    one = x * 0 + 1  # unit in the arithmetic of x
    vals = [one]
    if order >= 1:
        vals.append(n * x * one)
    for k in range(1, order):
        vals.append(n * x * vals[k] - n * k * vals[k - 1])
    return vals[: order + 1]


def hermite_translate(n: int, order: int, shift, x):
    """h_order(x + shift) assembled from the binomial translation sum

        h_m(x + a) = sum_k C(m, k) n^k a^k h_{m-k}(x).

    Exact for Fraction arguments, float otherwise.
    """
    base = hermite_values(n, order, x)
    total = base[order] * 0
    for k in range(order + 1):
        total += math.comb(order, k) * n ** k * shift ** k * base[order - k]
    return total


@dataclass(frozen=True)
class DensityProfile:
    """Density values (and optional derivatives) on a grid."""

    n: int
    grid: np.ndarray
    values: np.ndarray
    derivatives: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None


def density_profile(n: int, start: float, stop: float, points: int,
                    with_derivatives: bool = False) -> DensityProfile:
    """Evaluate p_N on a uniform grid.

    points == 1 is allowed as a degenerate single-point grid (start must
    equal stop); otherwise start < stop and points >= 2.
    """
    _check_size(n)
    if points < 1:
        raise ValueError("points must be >= 1")
    if points == 1:
        if start != stop:
            raise ValueError("single-point grid requires start == stop")
        grid = np.array([float(start)])
    else:
        if not start < stop:
            raise ValueError("need start < stop for a multi-point grid")
        grid = np.linspace(float(start), float(stop), points)
    if with_derivatives:
        p0, p1, p2, p3 = density_derivatives(n, grid)
        return DensityProfile(n, grid, p0, (p1, p2, p3))
    return DensityProfile(n, grid, density(n, grid))
