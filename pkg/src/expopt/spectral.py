"""Spectral (matrix) variants of the entropic machinery.

The matrix regularizer is the vector one composed with the singular-value
map; it is strongly convex with respect to the nuclear norm on nuclear
balls.  Every operation factors the matrix once, applies the corresponding
vector operation to the spectrum, and recomposes:

* :func:`spectral_prox` -- nuclear + Frobenius composite prox,
* :func:`nuclear_ball_project` -- Bregman projection onto the nuclear ball,
* :func:`spectral_omd_step` / :func:`spectral_ftrl_step` -- full learners,
  with the hint mismatch measured in the spectral norm.

Learner states carry the factors of the current iterate so each step costs
a single decomposition of the dual matrix.
"""

import math
from dataclasses import dataclass

import numpy as np

from .entropy import EXP_ARG_LIMIT, EntropyParams, NumericRangeError, entropy, mirror_map
from .prox import (
    BallConstraint,
    CompositeRegularizer,
    elastic_net_prox,
    elastic_net_prox_from_log,
    l1_ball_project,
    l1_ball_project_from_log,
)

__all__ = [
    "SvdFactors",
    "SpectralSchedule",
    "svd",
    "nuclear_norm",
    "spectral_norm",
    "spectral_reg_value",
    "spectral_grad",
    "spectral_bregman",
    "spectral_prox",
    "nuclear_ball_project",
    "nuclear_project_or_pass",
    "SpectralOmdState",
    "SpectralFtrlState",
    "spectral_omd_init",
    "spectral_omd_step",
    "spectral_ftrl_init",
    "spectral_ftrl_step",
    "SpectralExpMd",
    "SpectralExpFtrl",
]

FeasibleMode = BallConstraint | CompositeRegularizer | None


@dataclass(frozen=True)
class SvdFactors:
    """Thin singular value decomposition ``u @ diag(s) @ vt``.

    ``s`` is nonnegative and sorted descending; ``u`` has orthonormal
    columns and ``vt`` orthonormal rows.
    """

    u: np.ndarray
    s: np.ndarray
    vt: np.ndarray

    def compose(self) -> np.ndarray:
        return (self.u * self.s) @ self.vt


def svd(x) -> SvdFactors:
    """Thin SVD of a finite matrix.

    Raises a numeric error (``numpy.linalg.LinAlgError``) if the backend
    fails to converge.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("svd requires finite entries")
    u, s, vt = np.linalg.svd(x, full_matrices=False)
    return SvdFactors(u=u, s=s, vt=vt)


def nuclear_norm(x) -> float:
    return float(np.sum(np.linalg.svd(np.asarray(x, dtype=float), compute_uv=False)))


def spectral_norm(x) -> float:
    s = np.linalg.svd(np.asarray(x, dtype=float), compute_uv=False)
    return float(s[0]) if s.size else 0.0


@dataclass(frozen=True)
class SpectralSchedule:
    """Stepsize schedule for m-by-n matrix learners on a nuclear ball.

    Defaults: ``beta = 1/min(m, n)`` and
    ``eta = sqrt(1 / (ln(radius + 1) + ln(min(m, n))))``.
    """

    m: int
    n: int
    radius: float
    eta: float | None = None
    beta: float | None = None
    epsilon0: float = 1e-12

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("matrix dimensions must be positive")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        k = min(self.m, self.n)
        if self.beta is None:
            object.__setattr__(self, "beta", 1.0 / k)
        if self.eta is None:
            object.__setattr__(
                self, "eta", math.sqrt(1.0 / (math.log(self.radius + 1.0) + math.log(k)))
            )
        if not (self.eta > 0 and self.beta > 0):
            raise ValueError("eta and beta must be positive")


def spectral_reg_value(x, p: EntropyParams) -> float:
    """Regularizer value: entropy summed over the singular values."""
    s = np.linalg.svd(np.asarray(x, dtype=float), compute_uv=False)
    return float(np.sum(entropy(s, p)))


def spectral_grad(x, p: EntropyParams) -> np.ndarray:
    """Gradient ``u @ diag(mirror_map(s)) @ vt`` of the spectral regularizer."""
    f = svd(x)
    return (f.u * mirror_map(f.s, p)) @ f.vt


def spectral_bregman(x, y, p: EntropyParams) -> float:
    """Bregman divergence of the spectral regularizer (Frobenius pairing)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    val = (
        spectral_reg_value(x, p)
        - spectral_reg_value(y, p)
        - float(np.sum(spectral_grad(y, p) * (x - y)))
    )
    return max(val, 0.0)


def spectral_prox(y, reg: CompositeRegularizer, p: EntropyParams) -> np.ndarray:
    """Nuclear/Frobenius composite prox: factor, shrink the spectrum, recompose."""
    f = svd(y)
    shrunk = elastic_net_prox(f.s, reg, p)
    return (f.u * shrunk) @ f.vt


def nuclear_ball_project(y, ball: BallConstraint, p: EntropyParams) -> np.ndarray:
    """Bregman projection onto the nuclear ball, assuming ``||y||_* > D``."""
    f = svd(y)
    projected = l1_ball_project(f.s, ball, p)
    return (f.u * projected) @ f.vt


def nuclear_project_or_pass(y, ball: BallConstraint, p: EntropyParams) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if nuclear_norm(y) <= ball.radius:
        return y.copy()
    return nuclear_ball_project(y, ball, p)


def _resolve_spectrum(scale, p: EntropyParams, mode: FeasibleMode, reg_weight: float):
    """Mode resolution on nonnegative dual singular values ``scale = s/alpha``."""
    ones = np.ones_like(scale)
    if mode is None:
        if scale.size and float(np.max(scale)) > EXP_ARG_LIMIT:
            raise NumericRangeError("free-mode spectral iterate exceeds the float range")
        return p.beta * np.expm1(scale)
    if isinstance(mode, BallConstraint):
        m = float(np.max(scale))
        total = m + math.log(float(np.sum(np.exp(scale - m))))
        if total <= math.log(mode.radius / p.beta + scale.size):
            return p.beta * np.expm1(scale)
        return l1_ball_project_from_log(scale, ones, mode, p)
    if isinstance(mode, CompositeRegularizer):
        return elastic_net_prox_from_log(scale, ones, mode.scaled(reg_weight), p)
    raise TypeError(f"unsupported feasibility mode: {mode!r}")


@dataclass(frozen=True)
class SpectralOmdState:
    """Mirror-descent state carrying the factors of the current iterate."""

    x: np.ndarray
    factors: SvdFactors
    sum_sq: float
    h_prev: np.ndarray
    round: int


@dataclass(frozen=True)
class SpectralFtrlState:
    g_accum: np.ndarray
    x1: np.ndarray
    anchor_factors: SvdFactors
    sum_sq: float
    h_prev: np.ndarray
    round: int
    reg_rounds: float


def _as_matrix(v, sched: SpectralSchedule, name):
    v = np.asarray(v, dtype=float)
    if v.shape != (sched.m, sched.n):
        raise ValueError(f"{name} has shape {v.shape}, expected ({sched.m}, {sched.n})")
    return v


def spectral_omd_init(sched: SpectralSchedule, x1=None) -> SpectralOmdState:
    x1 = np.zeros((sched.m, sched.n)) if x1 is None else _as_matrix(x1, sched, "x1")
    return SpectralOmdState(
        x=x1.copy(),
        factors=svd(x1),
        sum_sq=0.0,
        h_prev=np.zeros((sched.m, sched.n)),
        round=1,
    )


def spectral_omd_step(
    state: SpectralOmdState,
    g,
    sched: SpectralSchedule,
    mode: FeasibleMode = None,
    h_next=None,
    reg_weight: float = 1.0,
):
    """One spectral mirror-descent round.

    The hint mismatch enters ``sum_sq`` through its largest singular value;
    the dual matrix is factored once and the spectrum resolved exactly as in
    the vector learner.
    """
    g = _as_matrix(g, sched, "g")
    h_next = (
        np.zeros((sched.m, sched.n)) if h_next is None else _as_matrix(h_next, sched, "h_next")
    )
    diff = g - state.h_prev
    sum_sq = state.sum_sq + spectral_norm(diff) ** 2
    alpha = sched.eta * math.sqrt(sched.epsilon0 + sum_sq)
    p = EntropyParams(alpha, sched.beta)
    f = state.factors
    grad_x = (f.u * mirror_map(f.s, p)) @ f.vt
    zf = svd(grad_x - (diff + h_next))
    spectrum = _resolve_spectrum(zf.s / alpha, p, mode, reg_weight)
    x = (zf.u * spectrum) @ zf.vt
    new_state = SpectralOmdState(
        x=x,
        factors=SvdFactors(zf.u, spectrum, zf.vt),
        sum_sq=sum_sq,
        h_prev=h_next,
        round=state.round + 1,
    )
    return new_state, x


def spectral_ftrl_init(sched: SpectralSchedule, x1=None) -> SpectralFtrlState:
    x1 = np.zeros((sched.m, sched.n)) if x1 is None else _as_matrix(x1, sched, "x1")
    return SpectralFtrlState(
        g_accum=np.zeros((sched.m, sched.n)),
        x1=x1.copy(),
        anchor_factors=svd(x1),
        sum_sq=0.0,
        h_prev=np.zeros((sched.m, sched.n)),
        round=1,
        reg_rounds=1.0,
    )


def spectral_ftrl_step(
    state: SpectralFtrlState,
    g,
    sched: SpectralSchedule,
    mode: FeasibleMode = None,
    h_next=None,
    reg_weight: float = 1.0,
):
    g = _as_matrix(g, sched, "g")
    h_next = (
        np.zeros((sched.m, sched.n)) if h_next is None else _as_matrix(h_next, sched, "h_next")
    )
    diff = g - state.h_prev
    sum_sq = state.sum_sq + spectral_norm(diff) ** 2
    alpha = sched.eta * math.sqrt(sched.epsilon0 + sum_sq)
    p = EntropyParams(alpha, sched.beta)
    g_accum = state.g_accum + g
    reg_rounds = state.reg_rounds + reg_weight
    af = state.anchor_factors
    anchor_grad = (af.u * mirror_map(af.s, p)) @ af.vt
    zf = svd(anchor_grad - g_accum - h_next)
    spectrum = _resolve_spectrum(zf.s / alpha, p, mode, reg_rounds)
    x = (zf.u * spectrum) @ zf.vt
    new_state = SpectralFtrlState(
        g_accum=g_accum,
        x1=state.x1,
        anchor_factors=state.anchor_factors,
        sum_sq=sum_sq,
        h_prev=h_next,
        round=state.round + 1,
        reg_rounds=reg_rounds,
    )
    return new_state, x


class SpectralExpMd:
    """Stateful spectral mirror-descent learner."""

    def __init__(self, sched: SpectralSchedule, mode: FeasibleMode = None, x1=None):
        self.sched = sched
        self.mode = mode
        self.state = spectral_omd_init(sched, x1)

    @property
    def x(self):
        return self.state.x

    def step(self, g, h_next=None, reg_weight: float = 1.0):
        self.state, x = spectral_omd_step(
            self.state, g, self.sched, mode=self.mode, h_next=h_next, reg_weight=reg_weight
        )
        return x


class SpectralExpFtrl:
    """Stateful spectral leader-following learner."""

    def __init__(self, sched: SpectralSchedule, mode: FeasibleMode = None, x1=None):
        self.sched = sched
        self.mode = mode
        self.state = spectral_ftrl_init(sched, x1)
        self._x = self.state.x1.copy()

    @property
    def x(self):
        return self._x

    def step(self, g, h_next=None, reg_weight: float = 1.0):
        self.state, self._x = spectral_ftrl_step(
            self.state, g, self.sched, mode=self.mode, h_next=h_next, reg_weight=reg_weight
        )
        return self._x
