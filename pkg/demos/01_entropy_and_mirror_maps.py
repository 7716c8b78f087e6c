"""The entropic potential and its mirror-map pair.

The scalar potential alpha*((|x|+beta)*ln(|x|/beta+1) - |x|) behaves like
x^2/(2*beta) near the origin and like |x|*ln|x| in the tails, so its
gradient map updates magnitudes multiplicatively while signs flip freely.
This script walks through the basic identities the optimizers rely on.
"""

import numpy as np

from expopt import (
    EntropyParams,
    bregman_div,
    entropy,
    entropy_conj,
    entropy_grad,
    mirror_map,
    mirror_map_inv,
)

p = EntropyParams(alpha=1.0, beta=0.1)

print("potential values (alpha=1, beta=0.1):")
for x in (0.0, 0.05, 0.5, 5.0, 50.0):
    print(f"  phi({x:5.2f}) = {entropy(x, p):10.4f}   quadratic ref {x * x / (2 * p.beta):10.4f}")

print("\nthe gradient pair inverts exactly:")
x = np.array([-3.0, -0.01, 0.0, 0.2, 40.0])
theta = mirror_map(x, p)
back = mirror_map_inv(theta, p)
print("  x        ", x)
print("  grad     ", np.round(theta, 4))
print("  inverted ", back)
print("  max error", np.max(np.abs(back - x)))

print("\nFenchel-Young holds with equality along the gradient:")
for xi in (0.5, 3.0):
    lhs = entropy(xi, p) + entropy_conj(entropy_grad(xi, p), p)
    rhs = xi * entropy_grad(xi, p)
    print(f"  x={xi}: phi(x) + phi*(phi'(x)) = {lhs:.12f} = x*phi'(x) = {rhs:.12f}")

print("\nthe Bregman divergence is an asymmetric squared distance:")
rng = np.random.default_rng(0)
a = rng.uniform(-1, 1, 5)
b = rng.uniform(-1, 1, 5)
print(f"  B(a, b) = {bregman_div(a, b, p):.6f}, B(b, a) = {bregman_div(b, a, p):.6f}")
print(f"  B(a, a) = {bregman_div(a, a, p):.6f}")
