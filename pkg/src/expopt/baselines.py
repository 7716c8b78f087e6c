"""Comparison learners: diagonal-preconditioner methods and signed
multiplicative weights.

The diagonal family accumulates per-coordinate squared gradients
``h_ii = 1e-6 + sum_s g_{s,i}^2`` (including the current round, so the very
first step is already sensibly scaled) and preconditions by ``1/sqrt(h)``.
Ball-mode feasibility uses an exact weighted-Euclidean projection onto the
l1 ball via bisection on the dual variable.

The signed multiplicative-weights learner maintains 2d nonnegative weights
of total mass D; its decision is the difference of the positive and
negative halves, which keeps the l1 norm within D by construction.
"""

import math
from dataclasses import dataclass

import numpy as np

from .prox import BallConstraint, CompositeRegularizer

__all__ = [
    "DiagProxState",
    "diag_init",
    "adagrad_step",
    "adaftrl_step",
    "weighted_l1_ball_project",
    "euclidean_nuclear_ball_project",
    "EgPmState",
    "eg_pm_init",
    "eg_pm_step",
    "AdaGrad",
    "AdaFtrl",
    "EgPm",
]

FeasibleMode = BallConstraint | CompositeRegularizer | None

_H_FLOOR = 1e-6


@dataclass(frozen=True)
class DiagProxState:
    """Diagonal learner state shared by the descent and leader variants."""

    h_diag: np.ndarray
    g_accum: np.ndarray
    x: np.ndarray
    h_prev: np.ndarray
    round: int
    reg_rounds: float


def diag_init(dim: int, x1=None) -> DiagProxState:
    x1 = np.zeros(dim) if x1 is None else np.asarray(x1, dtype=float).copy()
    if x1.shape != (dim,):
        raise ValueError(f"x1 has shape {x1.shape}, expected ({dim},)")
    return DiagProxState(
        h_diag=np.full(dim, _H_FLOOR),
        g_accum=np.zeros(dim),
        x=x1,
        h_prev=np.zeros(dim),
        round=1,
        reg_rounds=1.0,
    )


def weighted_l1_ball_project(y, weights, radius: float):
    """Projection of ``y`` onto the l1 ball in the ``diag(weights)`` metric.

    Minimizes ``sum_i w_i * (x_i - y_i)^2`` subject to ``||x||_1 <= radius``.
    The solution is the weighted soft threshold ``max(|y_i| - tau/w_i, 0)``;
    the dual variable ``tau`` is bracketed on the sorted grid of its
    breakpoints ``w_i * |y_i|`` (where the remaining mass is piecewise
    linear) and solved exactly on the active segment.
    """
    y = np.asarray(y, dtype=float)
    w = np.asarray(weights, dtype=float)
    abs_y = np.abs(y)
    if float(np.sum(abs_y)) <= radius:
        return y.copy()

    breaks = w * abs_y
    order = np.argsort(breaks)
    ts = breaks[order]
    # suffix sums over the candidate active sets {j, ..., d-1}
    suf_ay = np.cumsum(abs_y[order][::-1])[::-1]
    suf_iw = np.cumsum((1.0 / w[order])[::-1])[::-1]
    # remaining mass when tau reaches the j-th breakpoint
    mass_at = np.empty_like(ts)
    mass_at[:-1] = suf_ay[1:] - ts[:-1] * suf_iw[1:]
    mass_at[-1] = 0.0
    j = int(np.argmax(mass_at <= radius))  # first segment whose mass drops below radius
    tau = (suf_ay[j] - radius) / suf_iw[j]
    return np.sign(y) * np.maximum(abs_y - tau / w, 0.0)


def euclidean_nuclear_ball_project(y, radius: float):
    """Frobenius-metric projection of a matrix onto the nuclear ball.

    Factors once and projects the singular values onto the simplex-style
    l1 ball (unit weights).
    """
    y = np.asarray(y, dtype=float)
    u, s, vt = np.linalg.svd(y, full_matrices=False)
    if float(np.sum(s)) <= radius:
        return y.copy()
    s_proj = weighted_l1_ball_project(s, np.ones_like(s), radius)
    return (u * s_proj) @ vt


def _diag_resolve(target, h_sqrt, mode: FeasibleMode, reg_weight: float):
    """Minimize <q, x> + reg + 1/2 x' diag(h_sqrt) x shifted to ``target``.

    ``target`` is the unconstrained minimizer; ball mode projects it in the
    weighted metric, elastic net has the coordinatewise soft threshold.
    """
    if mode is None:
        return target
    if isinstance(mode, BallConstraint):
        return weighted_l1_ball_project(target, h_sqrt, mode.radius)
    if isinstance(mode, CompositeRegularizer):
        l1 = mode.l1 * reg_weight
        l2 = mode.l2 * reg_weight
        q = target * h_sqrt
        return np.sign(q) * np.maximum(np.abs(q) - l1, 0.0) / (h_sqrt + l2)
    raise TypeError(f"unsupported feasibility mode: {mode!r}")


def adagrad_step(
    state: DiagProxState,
    g,
    mode: FeasibleMode = None,
    h_next=None,
    reg_weight: float = 1.0,
):
    """Diagonal mirror-descent round.

    Without a hint this is the classic rule ``x - g_i / sqrt(h_ii)``
    followed by the mode resolution; an optional hint shifts the linear
    term to ``g - h_prev + h_next`` and the accumulator to the hint error.
    """
    g = np.asarray(g, dtype=float)
    if g.shape != state.x.shape:
        raise ValueError(f"g has shape {g.shape}, expected {state.x.shape}")
    h_next = np.zeros_like(g) if h_next is None else np.asarray(h_next, dtype=float)
    diff = g - state.h_prev
    h_diag = state.h_diag + diff * diff
    h_sqrt = np.sqrt(h_diag)
    target = state.x - (diff + h_next) / h_sqrt
    x = _diag_resolve(target, h_sqrt, mode, reg_weight)
    new_state = DiagProxState(
        h_diag=h_diag,
        g_accum=state.g_accum + g,
        x=x,
        h_prev=h_next,
        round=state.round + 1,
        reg_rounds=state.reg_rounds + reg_weight,
    )
    return new_state, x


def adaftrl_step(
    state: DiagProxState,
    g,
    mode: FeasibleMode = None,
    h_next=None,
    reg_weight: float = 1.0,
):
    """Diagonal leader-following round on the accumulated gradients."""
    g = np.asarray(g, dtype=float)
    if g.shape != state.x.shape:
        raise ValueError(f"g has shape {g.shape}, expected {state.x.shape}")
    h_next = np.zeros_like(g) if h_next is None else np.asarray(h_next, dtype=float)
    diff = g - state.h_prev
    h_diag = state.h_diag + diff * diff
    h_sqrt = np.sqrt(h_diag)
    g_accum = state.g_accum + g
    reg_rounds = state.reg_rounds + reg_weight
    target = -(g_accum + h_next) / h_sqrt
    x = _diag_resolve(target, h_sqrt, mode, reg_rounds)
    new_state = DiagProxState(
        h_diag=h_diag,
        g_accum=g_accum,
        x=x,
        h_prev=h_next,
        round=state.round + 1,
        reg_rounds=reg_rounds,
    )
    return new_state, x


@dataclass(frozen=True)
class EgPmState:
    """Signed multiplicative-weights state in log space.

    ``log_weights`` holds the 2d logits of the positive and negative
    halves; the decision is ``D * (softmax_+ - softmax_-)``.
    """

    log_weights: np.ndarray
    sum_sq: float
    round: int


def eg_pm_init(dim: int) -> EgPmState:
    return EgPmState(log_weights=np.zeros(2 * dim), sum_sq=0.0, round=1)


def eg_pm_step(state: EgPmState, g, radius: float, stepsize: float | None = None):
    """Multiplicative update with the doubled gradient ``[D/2*g, -D/2*g]``.

    The default stepsize is the adaptive ``1/sqrt(sum_s ||g_s||_inf^2)``
    including the current round.  Returns the new state and the signed
    difference of the two weight halves (l1 norm at most ``radius``).
    """
    g = np.asarray(g, dtype=float)
    d = g.size
    gmax = float(np.max(np.abs(g))) if d else 0.0
    sum_sq = state.sum_sq + gmax**2
    if stepsize is None:
        stepsize = 1.0 / math.sqrt(1e-12 + sum_sq)
    doubled = 0.5 * radius * np.concatenate([g, -g])
    logits = state.log_weights - stepsize * doubled
    logits = logits - np.max(logits)
    weights = np.exp(logits)
    weights = radius * weights / np.sum(weights)
    x = weights[:d] - weights[d:]
    new_state = EgPmState(
        log_weights=np.log(np.maximum(weights / radius, 1e-300)),
        sum_sq=sum_sq,
        round=state.round + 1,
    )
    return new_state, x


class AdaGrad:
    """Stateful diagonal mirror-descent baseline."""

    def __init__(self, dim: int, mode: FeasibleMode = None, x1=None):
        self.mode = mode
        self.state = diag_init(dim, x1)

    @property
    def x(self):
        return self.state.x

    def step(self, g, h_next=None, reg_weight: float = 1.0):
        self.state, x = adagrad_step(
            self.state, g, mode=self.mode, h_next=h_next, reg_weight=reg_weight
        )
        return x


class AdaFtrl:
    """Stateful diagonal leader-following baseline."""

    def __init__(self, dim: int, mode: FeasibleMode = None, x1=None):
        self.mode = mode
        self.state = diag_init(dim, x1)

    @property
    def x(self):
        return self.state.x

    def step(self, g, h_next=None, reg_weight: float = 1.0):
        self.state, x = adaftrl_step(
            self.state, g, mode=self.mode, h_next=h_next, reg_weight=reg_weight
        )
        return x


class EgPm:
    """Stateful signed multiplicative-weights baseline on a radius-D ball."""

    def __init__(self, dim: int, radius: float, stepsize: float | None = None):
        self.radius = radius
        self.stepsize = stepsize
        self.state = eg_pm_init(dim)
        d = dim
        w = np.full(2 * d, radius / (2 * d))
        self._x = w[:d] - w[d:]

    @property
    def x(self):
        return self._x

    def step(self, g, h_next=None, reg_weight: float = 1.0):
        self.state, self._x = eg_pm_step(self.state, g, self.radius, self.stepsize)
        return self._x
