"""Proximal steps under the entropic geometry.

Two solvers cover the composite objectives used throughout the package:

* :func:`elastic_net_prox` minimizes ``l1*||x||_1 + l2/2*||x||_2^2`` plus the
  entropic Bregman divergence to a dual anchor, coordinatewise, closing the
  nonzero branch with the Lambert function.
* :func:`l1_ball_project` is the Bregman projection onto an l1 ball: one
  sort of the magnitudes plus linear passes.

Both have ``*_from_log`` twins that take ``ln(|y_i|/beta + 1)`` directly.
The learners always use those: the quantity equals ``|z_i|/alpha`` of the
dual point exactly, so huge dual coordinates never need to be mapped into
the (overflowing) primal space just to be shrunk back down.
"""

from dataclasses import dataclass

import numpy as np

from .entropy import EXP_ARG_LIMIT, EntropyParams, NumericRangeError
from .lambertw import _w0_log_array

__all__ = [
    "CompositeRegularizer",
    "BallConstraint",
    "elastic_net_prox",
    "elastic_net_prox_from_log",
    "l1_ball_project",
    "l1_ball_project_from_log",
    "project_or_pass",
]


@dataclass(frozen=True)
class CompositeRegularizer:
    """Elastic-net weights: ``l1*||x||_1 + l2/2*||x||_2^2``.

    For matrices the same weights apply to nuclear and squared Frobenius
    norms through the singular values.
    """

    l1: float = 0.0
    l2: float = 0.0

    def __post_init__(self):
        if self.l1 < 0 or self.l2 < 0:
            raise ValueError("regularizer weights must be nonnegative")

    def scaled(self, weight: float) -> "CompositeRegularizer":
        return CompositeRegularizer(self.l1 * weight, self.l2 * weight)


@dataclass(frozen=True)
class BallConstraint:
    """l1 (or nuclear) ball of given positive radius."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("ball radius must be positive")


def elastic_net_prox(y, reg: CompositeRegularizer, p: EntropyParams):
    """Unique minimizer of ``reg(x) + bregman_div(x, y, p)`` over R^d.

    Coordinates with ``ln(|y_i|/beta + 1) <= l1/alpha`` are set to zero;
    the rest keep the sign of ``y_i`` with magnitude solving the scalar
    stationarity equation.  With ``l1 = l2 = 0`` this is the identity.
    """
    y = np.asarray(y, dtype=float)
    if reg.l1 == 0.0 and reg.l2 == 0.0:
        return y.copy()
    log_scale = np.log1p(np.abs(y) / p.beta)
    return elastic_net_prox_from_log(log_scale, np.sign(y), reg, p)


def elastic_net_prox_from_log(log_scale, signs, reg: CompositeRegularizer, p: EntropyParams):
    """Elastic-net prox from dual-side inputs.

    Parameters
    ----------
    log_scale : array
        ``ln(|y_i|/beta + 1) >= 0`` per coordinate (equals ``|z_i|/alpha``
        when ``y`` is the image of a dual point ``z``).
    signs : array
        Signs to attach to the nonzero outputs.
    """
    log_scale = np.asarray(log_scale, dtype=float)
    signs = np.asarray(signs, dtype=float)
    threshold = reg.l1 / p.alpha
    out = np.zeros_like(log_scale)
    active = log_scale > threshold
    if not np.any(active):
        return out

    if reg.l2 == 0.0:
        excess = log_scale[active] - threshold
        if np.max(excess) + np.log(p.beta) > EXP_ARG_LIMIT:
            raise NumericRangeError("l1-only prox output exceeds float range")
        out[active] = p.beta * np.expm1(excess)
    else:
        a = p.beta
        b = reg.l2 / p.alpha
        # magnitude m solves ln(m/beta+1) + (l2/alpha)*m = log_scale - l1/alpha;
        # in Lambert form m = w0(a*b*exp(a*b - c))/b - a with the argument
        # kept in the log domain.
        s = np.log(a * b) + a * b - (threshold - log_scale[active])
        w, _ = _w0_log_array(s)
        out[active] = np.maximum(w / b - a, 0.0)
    return signs * out


def l1_ball_project(y, ball: BallConstraint, p: EntropyParams, ops: dict | None = None):
    """Bregman projection of ``y`` onto the l1 ball, assuming ``||y||_1 > D``.

    Sorts the magnitudes ascending, locates the support breakpoint by a
    linear scan of the suffix statistics, and rescales the surviving
    coordinates by a common factor.  ``ops``, when given, is filled with
    the number of sorts and full-array passes performed (the work is one
    sort plus a constant number of O(d) passes).
    """
    y = np.asarray(y, dtype=float)
    d = y.size
    radius = ball.radius
    beta = p.beta

    abs_y = np.abs(y)
    mags = np.sort(abs_y)  # ascending
    suffix = np.cumsum(mags[::-1])[::-1]  # suffix[j] = sum_{i >= j} mags[i]
    counts = np.arange(d, 0, -1, dtype=float)  # d - j + 1 for j = 1..d
    thresh = mags * (radius + counts * beta) + beta * radius - beta * suffix
    positive = thresh > 0
    rho = int(np.argmax(positive))  # first index with thresh > 0; exists for y != 0
    k = d - rho
    scale = (suffix[rho] + k * beta) / (radius + k * beta)
    out = np.maximum((abs_y + beta) / scale - beta, 0.0) * np.sign(y)
    if ops is not None:
        ops["sorts"] = 1
        ops["passes"] = 7  # abs, suffix-sum, threshold, scan, rescale, clamp, sign
    return out


def l1_ball_project_from_log(log_scale, signs, ball: BallConstraint, p: EntropyParams):
    """Log-domain twin of :func:`l1_ball_project`.

    Works entirely on ``L_i = ln(|y_i|/beta + 1)``, so arbitrarily large
    dual coordinates project without ever forming ``|y_i|``.  Output
    coordinates are bounded by the radius, hence always representable.
    """
    L = np.asarray(log_scale, dtype=float)
    signs = np.asarray(signs, dtype=float)
    d = L.size
    radius = ball.radius
    beta = p.beta

    Ls = np.sort(L)
    # suffix log-sum-exp: S[j] = ln sum_{i >= j} exp(Ls[i])
    S = np.logaddexp.accumulate(Ls[::-1])[::-1]
    counts = np.arange(d, 0, -1, dtype=float)
    # theta(j) > 0  <=>  Ls[j] + ln(D + k*beta) > ln(beta) + S[j]
    crit = Ls + np.log(radius + counts * beta) - np.log(beta) - S
    rho = int(np.argmax(crit > 0))
    k = d - rho
    out = np.maximum((radius + k * beta) * np.exp(L - S[rho]) - beta, 0.0)
    return out * signs


def project_or_pass(y, ball: BallConstraint, p: EntropyParams):
    """Checked projection: returns ``y`` unchanged when already feasible."""
    y = np.asarray(y, dtype=float)
    if np.sum(np.abs(y)) <= ball.radius:
        return y.copy()
    return l1_ball_project(y, ball, p)
