"""Adaptive optimistic online learners over R^d with exponentiated updates.

Both learners run through a two-step dual-point scheme: form a dual vector
``z``, map it back through the inverse mirror map, then resolve the
feasibility mode (free space, composite regularizer, or l1 ball).

* mirror-descent flavor: ``z = mirror_map(x_t) - (g_t - h_t + h_{t+1})``
* leader-following flavor: ``z = mirror_map(x_1) - g_{1:t} - h_{t+1}``

The per-round scale ``alpha_{t+1} = eta * sqrt(eps0 + sum_s ||g_s - h_s||_inf^2)``
adapts to how well the hints ``h`` predict the gradients.  Mode resolution
happens in the log domain: the prox and projection consume ``|z_i|/alpha``
directly, which equals ``ln(|y_i|/beta + 1)`` of the primal image, so huge
dual coordinates are clamped by the constraint without overflowing.
"""

import math
from dataclasses import dataclass

import numpy as np

from .entropy import EXP_ARG_LIMIT, EntropyParams, NumericRangeError, mirror_map
from .prox import (
    BallConstraint,
    CompositeRegularizer,
    elastic_net_prox_from_log,
    l1_ball_project_from_log,
)

__all__ = [
    "ScheduleParams",
    "OmdState",
    "FtrlState",
    "omd_init",
    "omd_step",
    "ftrl_init",
    "ftrl_step",
    "regret",
    "ExpMd",
    "ExpFtrl",
]

# Feasibility mode is a plain union: None for the free space, a
# BallConstraint for the l1 ball, a CompositeRegularizer for elastic net.
FeasibleMode = BallConstraint | CompositeRegularizer | None


@dataclass(frozen=True)
class ScheduleParams:
    """Stepsize schedule for a d-dimensional learner on a radius-D domain.

    Defaults follow the adaptive schedule: ``beta = 1/dim`` and
    ``eta = sqrt(1 / (ln(radius + 1) + ln(dim)))``.  ``epsilon0`` keeps the
    mirror map finite on rounds where every gradient matched its hint.
    """

    dim: int
    radius: float
    eta: float | None = None
    beta: float | None = None
    epsilon0: float = 1e-12

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be a positive integer")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.beta is None:
            object.__setattr__(self, "beta", 1.0 / self.dim)
        if self.eta is None:
            object.__setattr__(
                self, "eta", math.sqrt(1.0 / (math.log(self.radius + 1.0) + math.log(self.dim)))
            )
        if not (self.eta > 0 and self.beta > 0):
            raise ValueError("eta and beta must be positive")
        if self.epsilon0 < 0:
            raise ValueError("epsilon0 must be nonnegative")


@dataclass(frozen=True)
class OmdState:
    """Mirror-descent learner state: current point and hint bookkeeping."""

    x: np.ndarray
    sum_sq: float
    h_prev: np.ndarray
    round: int


@dataclass(frozen=True)
class FtrlState:
    """Leader-following learner state anchored at ``x1``.

    ``anchor_dual`` caches the scale-free mirror direction of the anchor so
    the dual point for any round is ``alpha * anchor_dual - g_accum - h``.
    ``reg_rounds`` is the accumulated composite-regularizer weight
    (``t + 1`` under unit per-round weights).
    """

    g_accum: np.ndarray
    x1: np.ndarray
    anchor_dual: np.ndarray
    sum_sq: float
    h_prev: np.ndarray
    round: int
    reg_rounds: float


def _as_vector(v, dim, name):
    v = np.asarray(v, dtype=float)
    if v.shape != (dim,):
        raise ValueError(f"{name} has shape {v.shape}, expected ({dim},)")
    return v


def _logsumexp(values):
    m = float(np.max(values))
    return m + math.log(float(np.sum(np.exp(values - m))))


def resolve_dual_point(z, p: EntropyParams, mode: FeasibleMode, reg_weight: float = 1.0):
    """Map a dual vector to the feasible primal point of the configured mode.

    Free mode applies the inverse mirror map directly (raising
    :class:`NumericRangeError` past the exponent range); ball and
    regularized modes stay in the log domain throughout.
    """
    scale = np.abs(z) / p.alpha
    signs = np.sign(z)
    if mode is None:
        if float(np.max(scale)) > EXP_ARG_LIMIT:
            raise NumericRangeError("free-mode iterate exceeds the floating-point range")
        return p.beta * np.expm1(scale) * signs
    if isinstance(mode, BallConstraint):
        # feasible iff sum_i beta*(exp(L_i) - 1) <= radius
        if _logsumexp(scale) <= math.log(mode.radius / p.beta + scale.size):
            return p.beta * np.expm1(scale) * signs
        return l1_ball_project_from_log(scale, signs, mode, p)
    if isinstance(mode, CompositeRegularizer):
        return elastic_net_prox_from_log(scale, signs, mode.scaled(reg_weight), p)
    raise TypeError(f"unsupported feasibility mode: {mode!r}")


def omd_init(sched: ScheduleParams, x1=None) -> OmdState:
    """Fresh state at a feasible anchor (default: the origin)."""
    x1 = np.zeros(sched.dim) if x1 is None else _as_vector(x1, sched.dim, "x1")
    return OmdState(x=x1.copy(), sum_sq=0.0, h_prev=np.zeros(sched.dim), round=1)


def omd_step(
    state: OmdState,
    g,
    sched: ScheduleParams,
    mode: FeasibleMode = None,
    h_next=None,
    reg_weight: float = 1.0,
):
    """One mirror-descent round: consume ``g_t`` and the next hint.

    Returns the new state and the decision ``x_{t+1}``.  ``reg_weight``
    scales the composite regularizer for this round (used by the
    stochastic-acceleration wrapper).
    """
    g = _as_vector(g, sched.dim, "g")
    h_next = np.zeros(sched.dim) if h_next is None else _as_vector(h_next, sched.dim, "h_next")
    diff = g - state.h_prev
    sum_sq = state.sum_sq + float(np.max(np.abs(diff))) ** 2
    alpha = sched.eta * math.sqrt(sched.epsilon0 + sum_sq)
    p = EntropyParams(alpha, sched.beta)
    z = mirror_map(state.x, p) - (diff + h_next)
    x = resolve_dual_point(z, p, mode, reg_weight)
    return OmdState(x=x, sum_sq=sum_sq, h_prev=h_next, round=state.round + 1), x


def ftrl_init(sched: ScheduleParams, x1=None) -> FtrlState:
    x1 = np.zeros(sched.dim) if x1 is None else _as_vector(x1, sched.dim, "x1")
    anchor_dual = np.log1p(np.abs(x1) / sched.beta) * np.sign(x1)
    return FtrlState(
        g_accum=np.zeros(sched.dim),
        x1=x1.copy(),
        anchor_dual=anchor_dual,
        sum_sq=0.0,
        h_prev=np.zeros(sched.dim),
        round=1,
        reg_rounds=1.0,
    )


def ftrl_step(
    state: FtrlState,
    g,
    sched: ScheduleParams,
    mode: FeasibleMode = None,
    h_next=None,
    reg_weight: float = 1.0,
):
    """One leader-following round; mirrors :func:`omd_step`.

    In regularized mode the prox uses the accumulated weight
    ``r_{1:t+1}``, i.e. ``(t + 1)`` under unit weights.
    """
    g = _as_vector(g, sched.dim, "g")
    h_next = np.zeros(sched.dim) if h_next is None else _as_vector(h_next, sched.dim, "h_next")
    diff = g - state.h_prev
    sum_sq = state.sum_sq + float(np.max(np.abs(diff))) ** 2
    alpha = sched.eta * math.sqrt(sched.epsilon0 + sum_sq)
    p = EntropyParams(alpha, sched.beta)
    g_accum = state.g_accum + g
    reg_rounds = state.reg_rounds + reg_weight
    z = alpha * state.anchor_dual - g_accum - h_next
    x = resolve_dual_point(z, p, mode, reg_rounds)
    new_state = FtrlState(
        g_accum=g_accum,
        x1=state.x1,
        anchor_dual=state.anchor_dual,
        sum_sq=sum_sq,
        h_prev=h_next,
        round=state.round + 1,
        reg_rounds=reg_rounds,
    )
    return new_state, x


def regret(losses_player, losses_comparator):
    """Running cumulative difference of two per-round loss sequences."""
    a = np.asarray(losses_player, dtype=float)
    b = np.asarray(losses_comparator, dtype=float)
    if a.shape != b.shape:
        raise ValueError("loss sequences must have equal length")
    return np.cumsum(a - b)


class ExpMd:
    """Stateful mirror-descent learner; thin wrapper over :func:`omd_step`."""

    def __init__(self, sched: ScheduleParams, mode: FeasibleMode = None, x1=None):
        self.sched = sched
        self.mode = mode
        self.state = omd_init(sched, x1)

    @property
    def x(self):
        return self.state.x

    def step(self, g, h_next=None, reg_weight: float = 1.0):
        self.state, x = omd_step(
            self.state, g, self.sched, mode=self.mode, h_next=h_next, reg_weight=reg_weight
        )
        return x


class ExpFtrl:
    """Stateful leader-following learner; thin wrapper over :func:`ftrl_step`."""

    def __init__(self, sched: ScheduleParams, mode: FeasibleMode = None, x1=None):
        self.sched = sched
        self.mode = mode
        self.state = ftrl_init(sched, x1)
        self._x = self.state.x1.copy()

    @property
    def x(self):
        return self._x

    def step(self, g, h_next=None, reg_weight: float = 1.0):
        self.state, self._x = ftrl_step(
            self.state, g, self.sched, mode=self.mode, h_next=h_next, reg_weight=reg_weight
        )
        return self._x
