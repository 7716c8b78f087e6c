"""Principal branch of the Lambert function.

Provides ``w`` solving ``w * exp(w) = z`` for ``z >= 0`` and, crucially for
the elastic-net proximal step, a log-domain variant solving
``w + ln(w) = s`` for ``z = exp(s)`` that never materializes ``exp(s)``.
The proximal argument ``a*b*exp(a*b - c)`` overflows float64 whenever
``-c`` is a few hundred, which happens routinely for adaptive stepsizes,
so all production call-sites go through :func:`lambert_w0_from_log`.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["LambertResult", "lambert_w0", "lambert_w0_from_log"]

_MAX_ITER = 40
_TINY = 1e-300


@dataclass(frozen=True)
class LambertResult:
    """Converged value with its backward error.

    ``residual`` is relative for :func:`lambert_w0` (absolute below
    ``1e-300``) and measured on ``w + ln w - s`` for the log-domain solver.
    """

    w: float
    residual: float
    iterations: int


def lambert_w0(z: float) -> LambertResult:
    """Principal branch value ``w >= 0`` with ``w * exp(w) = z``.

    Halley iteration seeded with the asymptotic initializer; monotone
    increasing in ``z``.

    Raises
    ------
    ValueError
        For negative or non-finite ``z``.
    """
    z = float(z)
    if not np.isfinite(z) or z < 0:
        raise ValueError(f"lambert_w0 requires finite z >= 0, got {z}")
    if z == 0.0:
        return LambertResult(0.0, 0.0, 0)

    if z > 3.0:
        # w ~ ln z - ln ln z for large arguments
        l1 = np.log(z)
        l2 = np.log(l1)
        w = l1 - l2 + l2 / l1
    elif z < 1e-3:
        w = z * (1.0 - z)
    else:
        w = np.log1p(z)

    its = 0
    for its in range(1, _MAX_ITER + 1):
        ew = np.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        dw = f / denom
        w -= dw
        if abs(dw) <= 1e-16 * (2.0 + abs(w)):
            break

    residual = abs(w * np.exp(w) - z) / max(z, _TINY)
    return LambertResult(float(w), float(residual), its)


def _w0_log_array(s):
    """Vectorized solve of ``w + ln w = s``; returns ``w = exp(v)``.

    Newton iteration on ``h(v) = exp(v) + v - s`` in ``v = ln w``; ``h`` is
    convex and increasing, and both seeds below start right of the root, so
    the iteration is monotone and safe for any finite ``s``.
    """
    s = np.asarray(s, dtype=float)
    v = np.where(s > 1.0, np.log(np.maximum(s, 1.0)), s)
    its = 0
    for its in range(1, _MAX_ITER + 1):
        ev = np.exp(v)
        step = (ev + v - s) / (ev + 1.0)
        v = v - step
        if np.all(np.abs(step) <= 1e-16 * (2.0 + np.abs(v))):
            break
    return np.exp(v), its


def lambert_w0_from_log(s: float) -> LambertResult:
    """Solve ``w + ln w = s``, i.e. ``w * exp(w) = exp(s)``, for finite s.

    Agrees with ``lambert_w0(exp(s))`` wherever ``exp(s)`` is representable
    and remains accurate far outside that range.
    """
    s = float(s)
    if not np.isfinite(s):
        raise ValueError(f"lambert_w0_from_log requires finite s, got {s}")
    w, its = _w0_log_array(s)
    w = float(w)
    if w >= _TINY:
        residual = abs(w + np.log(w) - s) / max(abs(s), 1.0)
    else:
        residual = 0.0
    return LambertResult(w, float(residual), its)
