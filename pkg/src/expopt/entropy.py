"""Symmetric entropy-like regularizer and its mirror maps.

The scalar potential

    phi(x) = alpha * ((|x| + beta) * ln(|x|/beta + 1) - |x|)

interpolates between the absolute value and the square.  Applied
coordinatewise and summed it yields a regularizer that is strongly convex
with respect to the l1 norm on bounded sets, which is what the learners in
:mod:`expopt.learners` rely on.  All functions here are pure and operate on
scalars or numpy arrays alike.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "NumericRangeError",
    "EntropyParams",
    "EXP_ARG_LIMIT",
    "entropy",
    "entropy_grad",
    "entropy_hess",
    "entropy_conj",
    "entropy_conj_grad",
    "entropy_conj_hess",
    "reg_value",
    "mirror_map",
    "mirror_map_inv",
    "bregman_div",
]

# Dual arguments with |theta|/alpha beyond this would exp() past float range.
EXP_ARG_LIMIT = 700.0


class NumericRangeError(OverflowError):
    """A dual-side quantity left the representable floating-point range.

    Raised instead of silently producing ``inf`` so that proximal and
    projection code never consumes non-finite intermediates.
    """


@dataclass(frozen=True)
class EntropyParams:
    """Scale and offset of the entropy-like potential.

    Parameters
    ----------
    alpha : float
        Positive scale; in the online learners it varies per round.
    beta : float
        Positive offset controlling the curvature near zero, typically
        ``1/d`` for d-dimensional problems.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0 and np.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha}")
        if not (self.beta > 0 and np.isfinite(self.beta)):
            raise ValueError(f"beta must be positive and finite, got {self.beta}")


def entropy(x, p: EntropyParams):
    """Pointwise potential alpha*((|x|+beta)*ln(|x|/beta+1) - |x|).

    Even, nonnegative and strictly convex in ``x``.
    """
    ax = np.abs(x)
    val = p.alpha * ((ax + p.beta) * np.log1p(ax / p.beta) - ax)
    # Mathematically >= 0; rounding may leave a tiny negative near x = 0.
    return np.maximum(val, 0.0)


def entropy_grad(x, p: EntropyParams):
    """Derivative alpha*ln(|x|/beta+1)*sgn(x); odd, zero at the origin."""
    x = np.asarray(x, dtype=float)
    return p.alpha * np.log1p(np.abs(x) / p.beta) * np.sign(x)


def entropy_hess(x, p: EntropyParams):
    """Second derivative alpha/(|x|+beta)."""
    return p.alpha / (np.abs(x) + p.beta)


def _check_dual_range(theta, p: EntropyParams):
    u = np.abs(theta) / p.alpha
    if np.any(u > EXP_ARG_LIMIT) or not np.all(np.isfinite(u)):
        raise NumericRangeError(
            "dual argument |theta|/alpha exceeds the floating-point exponent range"
        )
    return u


def entropy_conj(theta, p: EntropyParams):
    """Convex conjugate alpha*beta*exp(|theta|/alpha) - beta*|theta| - alpha*beta.

    Raises
    ------
    NumericRangeError
        If ``|theta|/alpha`` exceeds the exponent range of float64.
    """
    u = _check_dual_range(theta, p)
    # expm1(u) - u keeps full precision near the origin where the naive
    # exp(u) - 1 - u cancels catastrophically.
    return p.alpha * p.beta * (np.expm1(u) - u)


def entropy_conj_grad(theta, p: EntropyParams):
    """Gradient of the conjugate, (beta*exp(|theta|/alpha) - beta)*sgn(theta).

    Inverse of :func:`entropy_grad`.
    """
    theta = np.asarray(theta, dtype=float)
    u = _check_dual_range(theta, p)
    return p.beta * np.expm1(u) * np.sign(theta)


def entropy_conj_hess(theta, p: EntropyParams):
    """Second derivative of the conjugate, (beta/alpha)*exp(|theta|/alpha)."""
    u = _check_dual_range(theta, p)
    return (p.beta / p.alpha) * np.exp(u)


def reg_value(x, p: EntropyParams) -> float:
    """Vector regularizer: sum of the pointwise potential."""
    return float(np.sum(entropy(x, p)))


def mirror_map(x, p: EntropyParams):
    """Gradient of the vector regularizer, applied coordinatewise."""
    return entropy_grad(x, p)


def mirror_map_inv(theta, p: EntropyParams):
    """Gradient of the conjugate regularizer; inverse of :func:`mirror_map`."""
    return entropy_conj_grad(theta, p)


def bregman_div(x, y, p: EntropyParams) -> float:
    """Bregman divergence of the vector regularizer.

    ``reg(x) - reg(y) - <mirror_map(y), x - y>``; nonnegative, zero iff
    ``x == y``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    val = reg_value(x, p) - reg_value(y, p) - float(np.dot(mirror_map(y, p), x - y))
    return max(val, 0.0)
