"""Synthetic data generators and their loss oracles.

Three problem families, all deterministic given a numpy Generator:

* sparse online logistic regression (uniform features, logit labels),
* online multitask logistic regression with a low-rank parameter matrix,
* a black-box composite: a hinge over convex quadratics plus elastic net,
  standing in for expensive model-specific losses.
"""

from dataclasses import dataclass

import numpy as np

from ..prox import CompositeRegularizer

__all__ = [
    "LogisticStream",
    "MultitaskStream",
    "BlackboxComposite",
    "gen_logistic_stream",
    "gen_multitask_stream",
    "gen_blackbox_problem",
    "logistic_loss",
    "logistic_grad",
    "multitask_loss",
    "multitask_grad",
]


def _sigmoid(m):
    out = np.empty_like(m, dtype=float)
    pos = m >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-m[pos]))
    em = np.exp(m[~pos])
    out[~pos] = em / (1.0 + em)
    return out


@dataclass(frozen=True)
class LogisticStream:
    """Ground truth ``w_star`` plus the full (features, labels) stream."""

    w_star: np.ndarray
    features: np.ndarray  # (horizon, dim)
    labels: np.ndarray  # (horizon,), values in {-1, +1}


def gen_logistic_stream(
    dim: int, horizon: int, sparsity: float, rng: np.random.Generator
) -> LogisticStream:
    """Sparse logit stream: ``ceil((1 - sparsity) * dim)`` nonzero truth.

    Nonzero coordinates and feature vectors are uniform on [-1, 1]; labels
    are +1 with probability ``sigmoid(w_star . x)``.
    """
    if not 0.0 <= sparsity <= 1.0:
        raise ValueError("sparsity must lie in [0, 1]")
    # round before the ceil so 0.01 * 100 = 1.0000000000000009 still gives 1
    nnz = int(np.ceil(round((1.0 - sparsity) * dim, 9)))
    w_star = np.zeros(dim)
    if nnz > 0:
        support = rng.choice(dim, size=nnz, replace=False)
        w_star[support] = rng.uniform(-1.0, 1.0, size=nnz)
    features = rng.uniform(-1.0, 1.0, size=(horizon, dim))
    probs = _sigmoid(features @ w_star)
    labels = np.where(rng.random(horizon) < probs, 1.0, -1.0)
    return LogisticStream(w_star=w_star, features=features, labels=labels)


def logistic_loss(w, x, y) -> float:
    """ln(1 + exp(-y * w.x)) evaluated stably."""
    return float(np.logaddexp(0.0, -y * float(np.dot(w, x))))


def logistic_grad(w, x, y) -> np.ndarray:
    m = -y * float(np.dot(w, x))
    coeff = -y * float(_sigmoid(np.array([m]))[0])
    return coeff * x


@dataclass(frozen=True)
class MultitaskStream:
    """Low-rank truth ``w_star`` (dim x tasks) with per-task logit streams."""

    w_star: np.ndarray
    singular_values: np.ndarray  # the drawn spectrum of w_star
    features: np.ndarray  # (horizon, tasks, dim)
    labels: np.ndarray  # (horizon, tasks)


def _random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def gen_multitask_stream(
    dim: int, tasks: int, rank: int, horizon: int, rng: np.random.Generator
) -> MultitaskStream:
    """Correlated tasks: ``w_star = U diag(sigma) V`` of exact rank ``rank``.

    ``sigma`` has ``rank`` nonzero entries uniform on [0, 10]; the per-task
    parameters are the columns of ``w_star``.
    """
    if rank > min(dim, tasks):
        raise ValueError("rank cannot exceed min(dim, tasks)")
    u = _random_orthogonal(dim, rng)
    v = _random_orthogonal(tasks, rng)
    sigma = np.zeros(tasks)
    sigma[:rank] = rng.uniform(0.0, 10.0, size=rank)
    w_star = (u[:, :tasks] * sigma) @ v
    features = rng.uniform(-1.0, 1.0, size=(horizon, tasks, dim))
    margins = np.einsum("tkd,dk->tk", features, w_star)
    labels = np.where(rng.random((horizon, tasks)) < _sigmoid(margins), 1.0, -1.0)
    return MultitaskStream(
        w_star=w_star, singular_values=sigma.copy(), features=features, labels=labels
    )


def multitask_loss(w, features_t, labels_t) -> float:
    """Sum of the per-task logistic losses at round t."""
    margins = np.einsum("kd,dk->k", features_t, w)
    return float(np.sum(np.logaddexp(0.0, -labels_t * margins)))


def multitask_grad(w, features_t, labels_t) -> np.ndarray:
    margins = np.einsum("kd,dk->k", features_t, w)
    coeff = -labels_t * _sigmoid(-labels_t * margins)
    return features_t.T * coeff


@dataclass(frozen=True)
class BlackboxComposite:
    """Hinge over convex quadratics plus an elastic-net term.

    The smooth(ish) part is ``max(max_j q_j(x), -kappa)`` with
    ``q_j(x) = 0.5 * ||A_j (x - c_j)||^2 + b_j``; only function values of
    it are exposed to the optimizer, the elastic net is handled in closed
    form by the learners.
    """

    mats: np.ndarray  # (pieces, dim, dim)
    centers: np.ndarray  # (pieces, dim)
    offsets: np.ndarray  # (pieces,)
    kappa: float
    reg: CompositeRegularizer

    def piece_values(self, x) -> np.ndarray:
        diffs = x[None, :] - self.centers
        transformed = np.einsum("pij,pj->pi", self.mats, diffs)
        return 0.5 * np.sum(transformed**2, axis=1) + self.offsets

    def smooth(self, x) -> float:
        """Black-box part: max of the quadratic pieces, hinged at -kappa."""
        return float(max(np.max(self.piece_values(np.asarray(x, dtype=float))), -self.kappa))

    def objective(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return (
            self.smooth(x)
            + self.reg.l1 * float(np.sum(np.abs(x)))
            + 0.5 * self.reg.l2 * float(np.dot(x, x))
        )


def gen_blackbox_problem(
    dim: int, rng: np.random.Generator, pieces: int = 3, kappa: float = 0.5
) -> BlackboxComposite:
    mats = rng.standard_normal((pieces, dim, dim)) / np.sqrt(dim)
    centers = 0.5 * rng.uniform(-1.0, 1.0, size=(pieces, dim))
    offsets = rng.uniform(-0.8, -0.2, size=pieces)
    return BlackboxComposite(
        mats=mats,
        centers=centers,
        offsets=offsets,
        kappa=kappa,
        reg=CompositeRegularizer(l1=0.5, l2=0.5),
    )
