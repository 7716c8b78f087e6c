"""Self-contained property checks runnable from the CLI.

Each check is a compact version of an invariant also covered by the test
suite: mirror-map inversion, derivative consistency, strong convexity of
the regularizer, the scalar log-sum inequalities, Lambert round trips,
prox stationarity, projection feasibility, and harness determinism.
"""

import math

import numpy as np

from .entropy import (
    EntropyParams,
    bregman_div,
    entropy,
    entropy_grad,
    mirror_map,
    mirror_map_inv,
)
from .lambertw import lambert_w0, lambert_w0_from_log
from .prox import BallConstraint, CompositeRegularizer, elastic_net_prox, l1_ball_project

__all__ = ["run_all", "ALL_CHECKS"]


def check_mirror_inversion():
    rng = np.random.default_rng(11)
    p = EntropyParams(alpha=0.9, beta=0.05)
    x = rng.uniform(-100, 100, size=(2000, 50))
    back = mirror_map_inv(mirror_map(x, p), p)
    err = np.max(np.abs(back - x) / np.maximum(np.abs(x), 1.0))
    return err <= 1e-9, f"max relative inversion error {err:.3e}"


def check_derivatives():
    p = EntropyParams(alpha=1.3, beta=0.4)
    xs = np.linspace(0.05, 8.0, 60)
    h = 1e-6
    fd = (entropy(xs + h, p) - entropy(xs - h, p)) / (2 * h)
    err = np.max(np.abs(fd - entropy_grad(xs, p)))
    return err <= 1e-5, f"max first-derivative error {err:.3e}"


def check_strong_convexity():
    rng = np.random.default_rng(5)
    d, radius = 5, 2.0
    p = EntropyParams(alpha=0.7, beta=1.0 / d)
    worst = np.inf
    for _ in range(300):
        x = rng.uniform(-1, 1, d)
        y = rng.uniform(-1, 1, d)
        x *= radius / max(np.sum(np.abs(x)), radius)
        y *= radius / max(np.sum(np.abs(y)), radius)
        lhs = bregman_div(x, y, p)
        rhs = p.alpha / (2 * (radius + d * p.beta)) * np.sum(np.abs(x - y)) ** 2
        worst = min(worst, lhs - rhs)
    return worst >= -1e-9, f"worst Bregman slack {worst:.3e}"


def check_log_sum_bounds():
    rng = np.random.default_rng(17)
    ok = True
    worst = 0.0
    for _ in range(200):
        a = rng.uniform(0.01, 5.0, rng.integers(1, 50))
        csum = np.cumsum(a)
        lhs1 = np.sum(a / (csum + 1.0))
        ok &= lhs1 <= math.log(np.sum(a) + 1.0) + 1e-12
        mid = np.sum(a / np.sqrt(csum))
        ok &= math.sqrt(np.sum(a)) <= mid + 1e-12 and mid <= 2 * math.sqrt(np.sum(a)) + 1e-12
        worst = max(worst, lhs1 - math.log(np.sum(a) + 1.0))
    return bool(ok), f"worst log-sum violation {worst:.3e}"


def check_lambert():
    worst = 0.0
    for s in np.linspace(-690, 690, 200):
        r = lambert_w0_from_log(s)
        worst = max(worst, r.residual)
    direct = abs(lambert_w0(math.e).w - 1.0)
    return worst <= 1e-12 and direct <= 1e-12, f"worst log-domain residual {worst:.3e}"


def check_prox_stationarity():
    rng = np.random.default_rng(23)
    p = EntropyParams(alpha=0.8, beta=0.1)
    reg = CompositeRegularizer(l1=0.3, l2=0.5)
    worst = 0.0
    for _ in range(100):
        y = rng.uniform(-10, 10, 20)
        x = elastic_net_prox(y, reg, p)
        ly = np.log1p(np.abs(y) / p.beta)
        for yi, xi, lyi in zip(y, x, ly):
            if xi != 0.0:
                resid = abs(
                    lyi - (np.log1p(abs(xi) / p.beta) + reg.l1 / p.alpha + reg.l2 * abs(xi) / p.alpha)
                )
                worst = max(worst, resid)
            else:
                worst = max(worst, max(lyi - reg.l1 / p.alpha, 0.0))
    return worst <= 1e-9, f"worst stationarity residual {worst:.3e}"


def check_projection():
    rng = np.random.default_rng(31)
    p = EntropyParams(alpha=1.0, beta=0.25)
    worst = 0.0
    for _ in range(200):
        y = rng.uniform(-5, 5, 12)
        radius = 0.5 * np.sum(np.abs(y))
        x = l1_ball_project(y, BallConstraint(radius), p)
        worst = max(worst, abs(np.sum(np.abs(x)) - radius))
    return worst <= 1e-10, f"worst feasibility gap {worst:.3e}"


def check_determinism():
    from .harness import ExperimentSpec, run_experiment

    spec = ExperimentSpec(
        kind="logistic",
        dim=12,
        horizon=30,
        trials=2,
        algorithms=("exp_md", "adagrad"),
        seed=3,
        sparsity=0.5,
    )
    a, _ = run_experiment(spec)
    b, _ = run_experiment(spec)
    same = all(
        ra == rb for ra, rb in zip(a, b)
    ) and len(a) == len(b)
    return same, f"{len(a)} records compared"


ALL_CHECKS = [
    ("mirror-inversion", check_mirror_inversion),
    ("derivatives", check_derivatives),
    ("strong-convexity", check_strong_convexity),
    ("log-sum-bounds", check_log_sum_bounds),
    ("lambert", check_lambert),
    ("prox-stationarity", check_prox_stationarity),
    ("l1-projection", check_projection),
    ("determinism", check_determinism),
]


def run_all(verbose: bool = True) -> bool:
    all_ok = True
    for name, fn in ALL_CHECKS:
        ok, detail = fn()
        all_ok &= ok
        if verbose:
            print(f"{'PASS' if ok else 'FAIL'}  {name:<18} {detail}")
    return all_ok
