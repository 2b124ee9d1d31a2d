"""Adaptive Gauss-Kronrod quadrature and Brent root finding.

Both routines are pure functions of their arguments and keep no state
between calls.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

from .errors import QuadratureError, RootFindingError

DEFAULT_REL_TOL = 1e-12
ABS_FLOOR = 1e-15
MAX_LEVELS = 60
MAX_INTERVALS = 4000
MAX_ROOT_ITER = 2000

_EPS = 2.220446049250313e-16

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self):
        if not self.abs_error_estimate >= 0.0:
            raise ValueError("abs_error_estimate must be non-negative")
        if self.evaluations <= 0:
            raise ValueError("evaluations must be positive")


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")


def _checked(f: Callable[[float], float], x: float) -> float:
    y = float(f(x))
    if not math.isfinite(y):
        raise QuadratureError(f"integrand is not finite at x={x!r} (f={y!r})", abscissa=x)
    return y


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """Kronrod estimate and |Kronrod - Gauss| on [a, b]."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = _checked(f, center)
    kronrod = fc * _WGK[7]
    gauss = fc * _WG[3]
    for j in range(7):
        dx = half * _XGK[j]
        pair = _checked(f, center - dx) + _checked(f, center + dx)
        kronrod += _WGK[j] * pair
        if j % 2 == 1:
            gauss += _WG[j // 2] * pair
    kronrod *= half
    gauss *= half
    return kronrod, abs(kronrod - gauss)


def integrate(f: Callable[[float], float], a: float, b: float,
              rel_tol: float = DEFAULT_REL_TOL) -> QuadratureResult:
    """Integrate ``f`` over ``[a, b]`` by globally adaptive 15-point Gauss-Kronrod.

    The interval with the largest error estimate is bisected until the summed
    estimate drops below ``max(rel_tol * |value|, 1e-15)``. Raises
    :class:`QuadratureError` when an interval would need more than 60
    bisections, when the interval budget runs out, or when ``f`` returns a
    non-finite value.
    """
    if not a < b:
        raise ValueError(f"integrate requires a < b, got [{a}, {b}]")
    if not 0.0 < rel_tol <= 1e-3:
        raise ValueError(f"rel_tol must lie in (0, 1e-3], got {rel_tol}")

    value, err = _gk15(f, a, b)
    evaluations = 15
    # max-heap on error: (-err, tiebreak, a, b, value, err, level)
    heap = [(-err, 0, a, b, value, err, 0)]
    counter = 1
    total, total_err = value, err

    while total_err > max(rel_tol * abs(total), ABS_FLOOR):
        _, _, lo, hi, v, e, level = heapq.heappop(heap)
        if level >= MAX_LEVELS or len(heap) + 2 > MAX_INTERVALS:
            raise QuadratureError(
                f"no convergence on [{a}, {b}]: worst interval [{lo}, {hi}] "
                f"at level {level}, error estimate {total_err:.3e}",
                partial=total, abs_error=total_err)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        evaluations += 30
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        heapq.heappush(heap, (-e1, counter, lo, mid, v1, e1, level + 1))
        heapq.heappush(heap, (-e2, counter + 1, mid, hi, v2, e2, level + 1))
        counter += 2

    # re-sum to shed the drift of the running updates
    value = math.fsum(item[4] for item in heap)
    abs_err = math.fsum(item[5] for item in heap)
    return QuadratureResult(value, abs_err, evaluations)


def find_root(g: Callable[[float], float], bracket: RootBracket,
              rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Return a root of ``g`` inside ``bracket`` using Brent's method.

    The returned point always lies in ``[bracket.lo, bracket.hi]`` and the
    final sign-change bracket is narrower than ``rel_tol * |x|`` (plus a few
    ulps so that a root at zero terminates).
    """
    a, b = bracket.lo, bracket.hi
    fa, fb = float(g(a)), float(g(b))
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if not (math.isfinite(fa) and math.isfinite(fb)):
        raise RootFindingError(f"non-finite value at bracket end: g({a})={fa}, g({b})={fb}",
                               bracket=(a, b))
    if (fa > 0) == (fb > 0):
        raise RootFindingError(f"no sign change on [{a}, {b}]: g(lo)={fa}, g(hi)={fb}",
                               bracket=(a, b))

    c, fc = a, fa
    d = e = b - a
    for _ in range(MAX_ROOT_ITER):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 2.0 * _EPS * abs(b) + 0.5 * rel_tol * abs(b) + 1e-300
        m = 0.5 * (c - b)
        if abs(m) <= tol or fb == 0.0:
            return b
        if abs(e) >= tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol else math.copysign(tol, m)
        fb = float(g(b))
        if not math.isfinite(fb):
            raise RootFindingError(f"non-finite value g({b})={fb}", bracket=(min(a, c), max(a, c)))
    raise RootFindingError(f"root finding did not converge in {MAX_ROOT_ITER} iterations",
                           bracket=(min(b, c), max(b, c)))
