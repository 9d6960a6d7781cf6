"""Reusable numerical machinery.

Adaptive quadrature (oscillation-aware), principal-value quadrature with
symmetric singularity folding, the Zakian numerical inverse Laplace
transform, and the 1F2 evaluator needed by the zero-temperature energy
closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad


class QuadratureError(RuntimeError):
    """Raised when an integral cannot be brought within tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for the adaptive integrators.

    oscillation_hint: characteristic angular frequency of the integrand in
    the integration variable; when the interval covers many oscillation
    periods the integrator splits it at half-period boundaries first.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    oscillation_hint: float | None = None

    def __post_init__(self) -> None:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUAD = QuadratureSpec()


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUAD,
    points: Sequence[float] | None = None,
) -> tuple[float, float]:
    """Adaptive integral of f over [a, b]; returns (value, error estimate).

    With an oscillation_hint w such that w*(b-a) covers many half periods,
    the interval is pre-split at half-period boundaries and the pieces are
    summed; this keeps cos(w t)-type integrands convergent for large w*t.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a!r}, {b!r}]")
    hint = spec.oscillation_hint
    if hint and hint > 0:
        n_half = (b - a) * hint / math.pi
        if n_half > 8:
            # one interior breakpoint per half period, capped to keep cost sane
            n = min(int(n_half), 10 * spec.max_subdivisions)
            edges = np.linspace(a, b, n + 1)
            total, err = 0.0, 0.0
            for lo, hi in zip(edges[:-1], edges[1:]):
                val, e = quad(f, lo, hi, epsabs=spec.abs_tol / (n + 1),
                              epsrel=spec.rel_tol, limit=50)
                total += val
                err += e
            return total, err
    pts = [p for p in (points or []) if a < p < b] or None
    val, err = quad(f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                    limit=spec.max_subdivisions, points=pts)
    scale = max(abs(val), spec.abs_tol / spec.rel_tol)
    if not math.isfinite(val):
        raise QuadratureError(f"integral diverged on [{a}, {b}]")
    if err > 100.0 * spec.rel_tol * scale + 100.0 * spec.abs_tol:
        raise QuadratureError(
            f"requested tolerance not reached on [{a}, {b}]: estimate {val!r}, error {err!r}")
    return val, err


def integrate_principal_value(
    f: Callable[[float], float],
    a: float,
    b: float,
    pole: float,
    spec: QuadratureSpec = DEFAULT_QUAD,
) -> float:
    """Cauchy principal value of f over [a, b] with one simple pole inside.

    The symmetric window [pole-h, pole+h] is folded onto u in (0, h], where
    f(pole+u) + f(pole-u) is regular, and the remainder is integrated
    normally.
    """
    if not (a < pole < b):
        raise ValueError(f"pole must lie strictly inside ({a}, {b})")
    h = min(pole - a, b - pole)

    def folded(u: float) -> float:
        return f(pole + u) + f(pole - u)

    val, _ = quad(folded, 0.0, h, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                  limit=spec.max_subdivisions)
    if pole - a > h:
        rest, _ = quad(f, a, pole - h, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                       limit=spec.max_subdivisions)
        val += rest
    elif b - pole > h:
        rest, _ = quad(f, pole + h, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                       limit=spec.max_subdivisions)
        val += rest
    return val


# ---------------------------------------------------------------------------
# Zakian numerical inverse Laplace transform
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZakianConstants:
    """Node/weight pairs of the Zakian sum f(t) ~ (2/t) sum Re[K_j F(Xi_j/t)]."""

    Xi: tuple[complex, ...]
    K: tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.Xi) != len(self.K):
            raise ValueError("Xi and K must have the same length")

    @property
    def order(self) -> int:
        return len(self.Xi)


# Standard published five-term constants.
DEFAULT_ZAKIAN = ZakianConstants(
    Xi=(
        12.83767675 + 1.666063445j,
        12.22613209 + 5.012718792j,
        10.93430308 + 8.409673116j,
        8.776434715 + 11.92185389j,
        5.225453361 + 15.72952905j,
    ),
    K=(
        -36902.08210 + 196990.4257j,
        61277.02524 - 95408.62551j,
        -28916.56288 + 18169.18531j,
        4655.361138 - 1.901528642j,
        -118.7414011 - 141.3036911j,
    ),
)

_validated_constants: set[int] = set()


def validate_zakian(consts: ZakianConstants = DEFAULT_ZAKIAN) -> None:
    """Self-test: the constants must invert L[1] = 1/S to 1e-6 on t in [0.1, 10]."""
    key = id(consts)
    if key in _validated_constants:
        return
    for t in (0.1, 1.0, 10.0):
        val = zakian_invert(lambda s: 1.0 / s, t, consts, _validate=False)
        if abs(val - 1.0) > 1e-6:
            raise ValueError(
                f"Zakian constants fail the unit-step self-test at t={t}: {val!r}")
    _validated_constants.add(key)


def zakian_invert(
    F: Callable[[complex], complex],
    t: float,
    consts: ZakianConstants = DEFAULT_ZAKIAN,
    _validate: bool = True,
) -> float:
    """Inverse Laplace transform of F evaluated at time t > 0."""
    if t <= 0:
        raise ValueError(f"Zakian inversion needs t > 0, got {t!r}")
    if _validate:
        validate_zakian(consts)
    acc = 0.0
    for K_j, Xi_j in zip(consts.K, consts.Xi):
        acc += (K_j * F(Xi_j / t)).real
    return 2.0 * acc / t


def zakian_invert_grid(
    F: Callable[[complex], complex],
    t_grid: np.ndarray,
    consts: ZakianConstants = DEFAULT_ZAKIAN,
) -> np.ndarray:
    """Pointwise Zakian inversion over a grid (points are independent)."""
    return np.array([zakian_invert(F, float(t), consts) for t in t_grid])


# ---------------------------------------------------------------------------
# 1F2 hypergeometric evaluator
# ---------------------------------------------------------------------------

_SERIES_Z_LIMIT = 30.0
_SERIES_MAX_TERMS = 400


def hyp1f2(a: float, b1: float, b2: float, z: float) -> float:
    """Hypergeometric 1F2(a; b1, b2; z) for the energy-formula family, z <= 0.

    Direct series with term-ratio stopping at relative 1e-12.  For large
    |z| the alternating series cancels catastrophically in double
    precision, so the evaluation falls back to the defining oscillatory
    integral 1F2(a; 1/2, a+1; -y^2/4) = 2a * int_0^1 x^(2a-1) cos(x y) dx,
    available exactly for the b1 = 1/2, b2 = a + 1 family used here.
    """
    if z > 0:
        raise ValueError(f"only z <= 0 is supported, got {z!r}")
    if z == 0.0:
        return 1.0
    if abs(z) <= _SERIES_Z_LIMIT:
        return _hyp1f2_series(a, b1, b2, z)
    if not (abs(b1 - 0.5) < 1e-12 and abs(b2 - (a + 1.0)) < 1e-12):
        raise ValueError(
            "large-|z| evaluation is implemented for the (a; 1/2, a+1) family only")
    y = 2.0 * math.sqrt(-z)
    val, _ = quad(lambda x: x ** (2.0 * a - 1.0), 0.0, 1.0,
                  weight="cos", wvar=y, epsabs=1e-14, epsrel=1e-12, limit=200)
    return 2.0 * a * val


def _hyp1f2_series(a: float, b1: float, b2: float, z: float) -> float:
    total = 1.0
    term = 1.0
    for n in range(_SERIES_MAX_TERMS):
        term *= (a + n) * z / ((b1 + n) * (b2 + n) * (n + 1.0))
        total += term
        if abs(term) <= 1e-12 * max(abs(total), 1e-300) and n > 2:
            return total
    raise QuadratureError(
        f"1F2 series did not converge for ({a}, {b1}, {b2}; {z})")
