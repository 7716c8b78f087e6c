"""Algorithm registry: names accepted in experiment configs.

Online (regret) experiments use learners exposing ``.x`` and ``.step(g)``;
the black-box experiment wraps accelerated learners around two-point
gradient estimators, pairing each family with its direction law.
"""

import numpy as np

from ..baselines import AdaFtrl, AdaGrad, EgPm, diag_init, euclidean_nuclear_ball_project
from ..learners import ExpFtrl, ExpMd, ScheduleParams
from ..prox import BallConstraint, CompositeRegularizer
from ..spectral import SpectralExpFtrl, SpectralExpMd, SpectralSchedule

__all__ = [
    "VECTOR_ALGORITHMS",
    "MATRIX_ALGORITHMS",
    "ACCELERATED_ALGORITHMS",
    "build_vector_learner",
    "build_matrix_learner",
    "accelerated_family",
]

VECTOR_ALGORITHMS = ("exp_md", "exp_ftrl", "adagrad", "adaftrl", "eg_pm")
MATRIX_ALGORITHMS = ("spectral_exp_md", "spectral_exp_ftrl", "adagrad", "adaftrl")
ACCELERATED_ALGORITHMS = ("acc_exp_md", "acc_exp_ftrl", "acc_adagrad", "acc_adaftrl")


def build_vector_learner(name: str, dim: int, radius: float):
    """Instantiate a vector learner on the l1 ball of the given radius."""
    ball = BallConstraint(radius)
    if name == "exp_md":
        return ExpMd(ScheduleParams(dim, radius), mode=ball)
    if name == "exp_ftrl":
        return ExpFtrl(ScheduleParams(dim, radius), mode=ball)
    if name == "adagrad":
        return AdaGrad(dim, mode=ball)
    if name == "adaftrl":
        return AdaFtrl(dim, mode=ball)
    if name == "eg_pm":
        return EgPm(dim, radius)
    raise KeyError(f"unknown vector algorithm {name!r}")


class _VectorizedDiagNuclear:
    """Diagonal baseline on a flattened matrix, projected onto the nuclear ball.

    The diagonal step itself is coordinatewise on the vectorization; the
    nuclear-ball constraint is enforced by a Frobenius-metric projection
    (the exact weighted projection has no spectral form).
    """

    def __init__(self, m: int, n: int, radius: float, flavor: str):
        self.m, self.n, self.radius, self.flavor = m, n, radius, flavor
        self.state = diag_init(m * n)
        self._x = np.zeros((m, n))

    @property
    def x(self):
        return self._x

    def step(self, g, h_next=None, reg_weight: float = 1.0):
        flat = np.asarray(g, dtype=float).ravel()
        st = self.state
        h_diag = st.h_diag + flat * flat
        h_sqrt = np.sqrt(h_diag)
        g_accum = st.g_accum + flat
        if self.flavor == "md":
            target = self._x.ravel() - flat / h_sqrt
        else:
            target = -g_accum / h_sqrt
        self._x = euclidean_nuclear_ball_project(target.reshape(self.m, self.n), self.radius)
        self.state = type(st)(
            h_diag=h_diag,
            g_accum=g_accum,
            x=self._x.ravel(),
            h_prev=st.h_prev,
            round=st.round + 1,
            reg_rounds=st.reg_rounds + reg_weight,
        )
        return self._x


def build_matrix_learner(name: str, m: int, n: int, radius: float):
    """Instantiate a matrix learner on the nuclear ball of the given radius."""
    ball = BallConstraint(radius)
    if name == "spectral_exp_md":
        return SpectralExpMd(SpectralSchedule(m, n, radius), mode=ball)
    if name == "spectral_exp_ftrl":
        return SpectralExpFtrl(SpectralSchedule(m, n, radius), mode=ball)
    if name == "adagrad":
        return _VectorizedDiagNuclear(m, n, radius, flavor="md")
    if name == "adaftrl":
        return _VectorizedDiagNuclear(m, n, radius, flavor="ftrl")
    raise KeyError(f"unknown matrix algorithm {name!r}")


def accelerated_family(name: str, dim: int, reg: CompositeRegularizer, radius: float = 1.0):
    """Inner learner and estimator family for an accelerated algorithm.

    Exponentiated learners pair with Rademacher directions (delta = 1),
    diagonal ones with unit-sphere directions (delta = dim).
    """
    if name == "acc_exp_md":
        return ExpMd(ScheduleParams(dim, radius), mode=reg), "rademacher"
    if name == "acc_exp_ftrl":
        return ExpFtrl(ScheduleParams(dim, radius), mode=reg), "rademacher"
    if name == "acc_adagrad":
        return AdaGrad(dim, mode=reg), "sphere"
    if name == "acc_adaftrl":
        return AdaFtrl(dim, mode=reg), "sphere"
    raise KeyError(f"unknown accelerated algorithm {name!r}")
