"""Minimal-norm interpolation on both sides of the kernel pairing.

A LEFT expansion sum_j c_j K(x_j, .) carries the l1 coefficient norm; the
Gram solve gives the minimal-norm interpolant of prescribed data.  A RIGHT
expansion sum_j c_j K(., x_j) carries the sup norm, which for kernels with
the unit Lebesgue bound collapses to max_k |f(x_k)| over its own nodes,
and the minimal sup-norm interpolant of data y has norm exactly
max_j |y_j|.  The bilinear pairing reproduces point evaluations on both
sides and never exceeds the product of the two norms.
"""

import numpy as np

from l1kernels import (
    Side,
    bilinear_form,
    build_system,
    expansion,
    exponential,
    extension_norm,
    min_norm_interpolant_b,
    min_norm_interpolant_bsharp,
    section,
)

rng = np.random.default_rng(42)
x = np.array([-1.0, -0.3, 0.2, 0.9, 1.6])
y = np.array([0.5, -1.0, 2.0, 0.0, 1.0])
system = build_system(exponential(), x)

f = min_norm_interpolant_b(system, y)
print("l1-side interpolant:")
print("  coefficients:", np.round(f.coefficients.values, 6).tolist())
print("  values at nodes:", np.round([f.evaluate(v) for v in x], 12).tolist())
print("  coefficient norm ||c||_1 =", f.bnorm())

print("\nAdding any extra interpolation constraint cannot lower that norm:")
for t_new, b in [(0.5, 0.3), (-2.0, 1.0), (2.5, -0.7)]:
    ext = extension_norm(system, y, t_new, b)
    print(f"  constrain f({t_new:+.1f}) = {b:+.1f}:  extended norm {ext:.6f} >= {f.bnorm():.6f}")

g = min_norm_interpolant_bsharp(system, y)
print("\nsup-side interpolant:")
print("  values at nodes:", np.round([g.evaluate(v) for v in x], 12).tolist())
print("  sup norm =", g.bsharp_norm(), " (equals max |y_j| =", np.abs(y).max(), ")")
dense = np.linspace(-3, 3, 5001)
print("  dense grid sup (lower bound):", g.grid_sup_norm(dense))

print("\nReproducing identities through the bilinear pairing:")
t = 0.37
print("  <f, K(.,t)> =", bilinear_form(f, section(exponential(), t, Side.RIGHT)))
print("  f(t)        =", f.evaluate(t))

h = expansion(exponential(), [-0.5, 0.6], [1.0, -2.0], Side.RIGHT)
print("  <K(t,.), h> =", bilinear_form(section(exponential(), t, Side.LEFT), h))
print("  h(t)        =", h.evaluate(t))

print("\nPairing bound |<f, h>| <= ||f||_1 * ||h||_sup:")
print(f"  |<f,h>| = {abs(bilinear_form(f, h)):.6f} <= {f.bnorm() * h.bsharp_norm():.6f}")
