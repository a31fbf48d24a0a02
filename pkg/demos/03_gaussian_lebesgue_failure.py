"""Where the Gaussian kernel breaks: Lebesgue values far above 1.

Three symmetric points are enough.  On x = (-0.5, 0, 0.5) with sigma = 1
the Lebesgue function climbs past 3 at the window edge, so the Gaussian
cannot support the unit-bound representer theorem; the randomized audit
finds violations immediately.  The relaxed theory still applies: the
measured grid constant beta plays the role of the unit bound, at the cost
of a 1/beta factor in the norm guarantee.
"""

import numpy as np

from l1kernels import (
    Interval,
    RandomPointSets,
    audit_a4,
    audit_relaxed_a4,
    build_system,
    extension_norm,
    gaussian,
    lebesgue_constant,
    profile_grid,
)

kernel = gaussian(sigma=1.0)
window = Interval(-1.0, 1.0, lo_open=False, hi_open=False)

system = build_system(kernel, [-0.5, 0.0, 0.5])
profile = lebesgue_constant(system, np.linspace(-1, 1, 2001))
print("Fixed witness x = (-0.5, 0, 0.5):")
print(f"  max L = {profile.max_value:.4f} at t = {profile.argmax:+.3f}  (unit bound needs <= 1)")

print("\nRandomized audit (up to 200 trials):")
audit = audit_a4(kernel, RandomPointSets(window), grid_size=2001, trials=200, master_seed=303)
print(f"  verdict: {audit.verdict.value} after {audit.stats.n_trials} trial(s)")
print(f"  witness: n={len(audit.witness.points)} points, L = {audit.witness.value:.4f} "
      f"at t = {audit.witness.t:+.4f}")

print("\nRelaxed constant estimate over 50 small point sets:")
estimate = audit_relaxed_a4(
    kernel, RandomPointSets(window, n_range=(2, 6)), grid_size=1001, trials=50, master_seed=7
)
print(f"  worst grid beta = {estimate.stats.worst_value:.4f}")

print("\nThe relaxed norm guarantee in action (one-point extensions):")
rng = np.random.default_rng(1)
sampler = RandomPointSets(window, n_range=(2, 6), min_spacing_factor=5e-2)
worst = np.inf
for _ in range(200):
    ps = sampler(rng)
    sys_g = build_system(kernel, ps)
    y = rng.uniform(-1, 1, ps.n)
    t_new = rng.uniform(-1, 1)
    if np.abs(ps.points - t_new).min() < 1e-9:
        continue
    grid = np.unique(np.append(profile_grid(window, 501, ps), t_new))
    beta = max(lebesgue_constant(sys_g, grid).max_value, 1.0)
    base = np.abs(sys_g.solve(y)).sum()
    ext = extension_norm(sys_g, y, t_new, rng.uniform(-1, 1))
    worst = min(worst, ext - base / beta)
print(f"  min of (extension norm - base/beta) over 200 draws: {worst:.3e}  (>= 0 expected)")
