"""Numerical audits of the admissibility conditions and the relaxed bound.

A numerical audit can refute a condition (a concrete witness in hand) but
never prove one: a PASS verdict means "no violation found over the sampled
trials", and every report records how many trials were run.  Condition
(A3) is not audited at all — it quantifies over infinite absolutely
summable sequences — and is carried only as static kernel metadata.

The central quantity is the Lebesgue function

    L(t) = || K[x]^(-1) K_x(t) ||_1,

whose supremum over the domain is the Lebesgue constant of kernel
interpolation on x.  Condition (A4) asks for L(t) <= 1 everywhere; the
relaxed condition only asks for a finite bound beta_n, estimated here as a
grid supremum (always a lower bound of the true constant).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DegenerateSchur,
    DomainError,
    DuplicatePoints,
    SingularGram,
)
from .gram import GramSystem, PointSet, build_system
from .kernels import Interval, KernelSpec
from .streams import stream

__all__ = [
    "Condition",
    "Verdict",
    "Witness",
    "AuditStats",
    "AuditReport",
    "LebesgueProfile",
    "RandomPointSets",
    "lebesgue_function",
    "lebesgue_constant",
    "profile_grid",
    "pair_grid",
    "audit_a1",
    "audit_a2",
    "audit_a4",
    "audit_relaxed_a4",
    "extension_norm",
]

# Tolerance on the unit Lebesgue bound: absorbs solve round-off while staying
# orders of magnitude below any genuine violation seen in practice.
A4_TOL = 1e-9

# |Schur complement| below this means the extended Gram is numerically singular.
SCHUR_FLOOR = 1e-14


class Condition(enum.Enum):
    A1 = "a1"
    A2 = "a2"
    A4 = "a4"
    RELAXED_A4 = "relaxed_a4"


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Witness:
    """Concrete configuration substantiating a FAIL verdict."""

    points: tuple
    t: float | None
    value: float

    def as_dict(self) -> dict:
        return {"points": list(self.points), "t": self.t, "value": self.value}


@dataclass(frozen=True)
class AuditStats:
    n_trials: int
    worst_value: float | None
    argmax_location: object = None

    def as_dict(self) -> dict:
        return {
            "n_trials": self.n_trials,
            "worst_value": self.worst_value,
            "argmax_location": self.argmax_location,
        }


@dataclass(frozen=True)
class AuditReport:
    condition: Condition
    verdict: Verdict
    witness: Witness | None
    stats: AuditStats
    message: str | None = None

    def to_json(self) -> dict:
        obj = {
            "condition": self.condition.value,
            "verdict": self.verdict.value,
            "witness": self.witness.as_dict() if self.witness else None,
            "stats": self.stats.as_dict(),
        }
        if self.message:
            obj["message"] = self.message
        return obj


@dataclass(frozen=True)
class LebesgueProfile:
    """L(t) sampled over a grid, with the grid supremum and its location."""

    grid: np.ndarray
    values: np.ndarray
    max_value: float
    argmax: float


# ---------------------------------------------------------------------------
# Lebesgue function and constant


def lebesgue_function(system: GramSystem, t: float) -> float:
    """l1 norm of the cardinal coefficient vector at t (equals 1 at nodes)."""
    return float(np.abs(system.cardinal_coefficients(t)).sum())


def lebesgue_constant(system: GramSystem, grid) -> LebesgueProfile:
    """Profile of L(t) over a grid; the max is a lower bound of beta_n."""
    grid = np.asarray(grid, dtype=float).reshape(-1)
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    coeffs = system.cardinal_matrix(grid)
    values = np.abs(coeffs).sum(axis=0)
    i = int(np.argmax(values))
    return LebesgueProfile(grid=grid, values=values, max_value=float(values[i]), argmax=float(grid[i]))


def profile_grid(domain: Interval, num: int = 2001, points=None) -> np.ndarray:
    """Uniform grid over a bounded domain plus midpoints of adjacent points.

    Midpoints are included because the closed-form cardinal functions show
    the Lebesgue extrema landing between nodes; open endpoints are trimmed.
    """
    if not domain.bounded:
        raise ValueError(f"need a bounded interval to build a grid, got {domain}")
    if domain.lo_open or domain.hi_open:
        ts = np.linspace(domain.lo, domain.hi, num + 2)[1:-1]
    else:
        ts = np.linspace(domain.lo, domain.hi, num)
    if points is not None:
        x = np.sort(np.asarray(getattr(points, "points", points), dtype=float))
        if x.size > 1:
            ts = np.unique(np.concatenate([ts, 0.5 * (x[1:] + x[:-1])]))
    return ts


def pair_grid(s_values, t_values=None) -> np.ndarray:
    """All (s, t) pairs from one or two 1-D grids, as an (m, 2) array."""
    s_values = np.asarray(s_values, dtype=float).reshape(-1)
    t_values = s_values if t_values is None else np.asarray(t_values, dtype=float).reshape(-1)
    ss, tt = np.meshgrid(s_values, t_values, indexing="ij")
    return np.column_stack([ss.ravel(), tt.ravel()])


# ---------------------------------------------------------------------------
# point-set sampling


@dataclass(frozen=True)
class RandomPointSets:
    """Default audit sampler: n ~ U{n_range}, sorted uniform interior points.

    Draws are rejected and resampled until the minimum spacing reaches
    min_spacing_factor * (domain length), which keeps the Gram matrices
    well-conditioned so audits probe the mathematics rather than the
    floating point.
    """

    domain: Interval
    n_range: tuple[int, int] = (2, 30)
    min_spacing_factor: float = 1e-3
    max_rejections: int = 10_000

    def __post_init__(self):
        if not self.domain.bounded:
            raise ValueError("point sampling needs a bounded domain")
        lo, hi = self.n_range
        if not (1 <= lo <= hi):
            raise ValueError(f"bad n_range {self.n_range}")

    def __call__(self, rng: np.random.Generator) -> PointSet:
        n = int(rng.integers(self.n_range[0], self.n_range[1] + 1))
        threshold = self.min_spacing_factor * self.domain.length
        for _ in range(self.max_rejections):
            pts = rng.uniform(self.domain.lo, self.domain.hi, size=n)
            pts.sort()
            if not self.domain.contains(pts):
                continue
            if n == 1 or np.diff(pts).min() >= threshold:
                return PointSet(pts)
        raise RuntimeError(
            f"could not draw {n} points with spacing >= {threshold:.3e} "
            f"after {self.max_rejections} attempts"
        )


# ---------------------------------------------------------------------------
# audits


def audit_a1(
    kernel: KernelSpec,
    generator: Callable[[np.random.Generator], PointSet],
    trials: int,
    master_seed: int = 0,
) -> AuditReport:
    """Sample point sets and check every Gram matrix is numerically nonsingular."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    worst = math.inf
    worst_points = None
    for i in range(trials):
        rng = stream(master_seed, i, "audit-a1")
        try:
            ps = generator(rng)
        except (DuplicatePoints, ValueError, RuntimeError) as exc:
            return AuditReport(
                Condition.A1,
                Verdict.INCONCLUSIVE,
                None,
                AuditStats(i, None),
                message=f"point sampling failed on trial {i}: {exc}",
            )
        try:
            system = build_system(kernel, ps)
        except SingularGram as exc:
            witness = Witness(tuple(ps.points.tolist()), None, exc.rcond)
            return AuditReport(
                Condition.A1,
                Verdict.FAIL,
                witness,
                AuditStats(i + 1, exc.rcond, list(witness.points)),
                message=str(exc),
            )
        except (DomainError, DuplicatePoints) as exc:
            return AuditReport(
                Condition.A1,
                Verdict.INCONCLUSIVE,
                None,
                AuditStats(i, None),
                message=f"system construction failed on trial {i}: {exc}",
            )
        if system.rcond_estimate < worst:
            worst = system.rcond_estimate
            worst_points = ps.points.tolist()
    return AuditReport(
        Condition.A1,
        Verdict.PASS,
        None,
        AuditStats(trials, worst, worst_points),
    )


def audit_a2(kernel: KernelSpec, grid) -> AuditReport:
    """Compare sup |K| over sampled (s, t) pairs against the declared bound."""
    pairs = np.asarray(grid, dtype=float)
    if pairs.ndim != 2 or pairs.shape[1] != 2 or pairs.shape[0] == 0:
        raise ValueError("grid must be a nonempty (m, 2) array of (s, t) pairs")
    values = np.abs(np.atleast_1d(kernel.eval(pairs[:, 0], pairs[:, 1])))
    i = int(np.argmax(values))
    worst = float(values[i])
    s, t = float(pairs[i, 0]), float(pairs[i, 1])
    stats = AuditStats(int(pairs.shape[0]), worst, [s, t])
    if worst > kernel.bound + 1e-12:
        witness = Witness((s,), t, worst)
        return AuditReport(
            Condition.A2,
            Verdict.FAIL,
            witness,
            stats,
            message=f"|K| reached {worst:.6g}, above the declared bound {kernel.bound}",
        )
    return AuditReport(Condition.A2, Verdict.PASS, None, stats)


def audit_a4(
    kernel: KernelSpec,
    generator: Callable[[np.random.Generator], PointSet],
    grid_size: int = 2001,
    trials: int = 50,
    master_seed: int = 0,
    domain: Interval | None = None,
) -> AuditReport:
    """Grid-search the Lebesgue function for a value above 1 on sampled point sets.

    Numerically singular Gram draws are skipped (and counted); a report is
    INCONCLUSIVE only if every trial was skipped.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    domain = domain or getattr(generator, "domain", None) or kernel.domain
    worst = -math.inf
    worst_loc = None
    skipped = 0
    for i in range(trials):
        rng = stream(master_seed, i, "audit-a4")
        try:
            ps = generator(rng)
        except (DuplicatePoints, ValueError, RuntimeError) as exc:
            return AuditReport(
                Condition.A4,
                Verdict.INCONCLUSIVE,
                None,
                AuditStats(i, None),
                message=f"point sampling failed on trial {i}: {exc}",
            )
        try:
            system = build_system(kernel, ps)
        except SingularGram:
            skipped += 1
            continue
        grid = profile_grid(domain, grid_size, ps)
        prof = lebesgue_constant(system, grid)
        if prof.max_value > worst:
            worst = prof.max_value
            worst_loc = {"points": ps.points.tolist(), "t": prof.argmax}
        if prof.max_value > 1.0 + A4_TOL:
            witness = Witness(tuple(ps.points.tolist()), prof.argmax, prof.max_value)
            return AuditReport(
                Condition.A4,
                Verdict.FAIL,
                witness,
                AuditStats(i + 1, prof.max_value, worst_loc),
                message=(
                    f"Lebesgue value {prof.max_value:.6g} > 1 at t={prof.argmax:.6g} "
                    f"on an n={ps.n} point set"
                ),
            )
    if skipped == trials:
        return AuditReport(
            Condition.A4,
            Verdict.INCONCLUSIVE,
            None,
            AuditStats(trials, None),
            message="every sampled Gram matrix was numerically singular",
        )
    msg = f"{skipped} of {trials} trials skipped (singular Gram)" if skipped else None
    return AuditReport(
        Condition.A4,
        Verdict.PASS,
        None,
        AuditStats(trials, worst, worst_loc),
        message=msg,
    )


def audit_relaxed_a4(
    kernel: KernelSpec,
    generator: Callable[[np.random.Generator], PointSet],
    grid_size: int = 2001,
    trials: int = 50,
    master_seed: int = 0,
    domain: Interval | None = None,
    beta_cap: float | None = None,
) -> AuditReport:
    """Estimate the relaxed constant beta_n as the worst grid supremum of L.

    With beta_cap given, FAIL when the estimate exceeds it; otherwise the
    audit is purely an estimator and always passes, reporting the worst
    value seen.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    domain = domain or getattr(generator, "domain", None) or kernel.domain
    worst = -math.inf
    worst_loc = None
    worst_points: tuple = ()
    skipped = 0
    for i in range(trials):
        rng = stream(master_seed, i, "audit-relaxed-a4")
        try:
            ps = generator(rng)
        except (DuplicatePoints, ValueError, RuntimeError) as exc:
            return AuditReport(
                Condition.RELAXED_A4,
                Verdict.INCONCLUSIVE,
                None,
                AuditStats(i, None),
                message=f"point sampling failed on trial {i}: {exc}",
            )
        try:
            system = build_system(kernel, ps)
        except SingularGram:
            skipped += 1
            continue
        grid = profile_grid(domain, grid_size, ps)
        prof = lebesgue_constant(system, grid)
        if prof.max_value > worst:
            worst = prof.max_value
            worst_loc = {"points": ps.points.tolist(), "t": prof.argmax}
            worst_points = tuple(ps.points.tolist())
    if skipped == trials:
        return AuditReport(
            Condition.RELAXED_A4,
            Verdict.INCONCLUSIVE,
            None,
            AuditStats(trials, None),
            message="every sampled Gram matrix was numerically singular",
        )
    stats = AuditStats(trials, worst, worst_loc)
    if beta_cap is not None and worst > beta_cap + A4_TOL:
        witness = Witness(worst_points, worst_loc["t"], worst)
        return AuditReport(
            Condition.RELAXED_A4,
            Verdict.FAIL,
            witness,
            stats,
            message=f"grid Lebesgue constant {worst:.6g} exceeds the cap {beta_cap}",
        )
    msg = f"{skipped} of {trials} trials skipped (singular Gram)" if skipped else None
    return AuditReport(Condition.RELAXED_A4, Verdict.PASS, None, stats, message=msg)


# ---------------------------------------------------------------------------
# one-point extension


def extension_norm(system: GramSystem, y, t_new: float, b: float) -> float:
    """l1 norm of the coefficients interpolating (y, b) on x extended by t_new.

    Computed by the block elimination of the bordered Gram matrix: with

        p = K(t_new, t_new) - K^x(t_new) K[x]^(-1) K_x(t_new)
        q = K^x(t_new) K[x]^(-1) y - b

    the extended coefficient vector is

        ( K[x]^(-1) y + (q/p) K[x]^(-1) K_x(t_new),  -q/p ).

    Raises DegenerateSchur when |p| < 1e-14 (extended Gram numerically
    singular) and DuplicatePoints when t_new coincides with a sample point.
    """
    x = system.points.points
    t_new = float(t_new)
    if np.any(x == t_new):
        raise DuplicatePoints(f"extension point {t_new} coincides with a sample point")
    if not system.kernel.domain.contains(t_new):
        raise DomainError(f"extension point {t_new} outside domain {system.kernel.domain}")
    y = np.asarray(y, dtype=float).reshape(-1)

    d = system.cardinal_coefficients(t_new)
    row = system.kx_row(t_new)
    p = float(system.kernel.eval(t_new, t_new)) - float(row @ d)
    if abs(p) < SCHUR_FLOOR:
        raise DegenerateSchur(
            f"Schur complement {p:.3e} below {SCHUR_FLOOR:.0e}; "
            "the extended Gram matrix is numerically singular"
        )
    base = system.solve(y)
    q = float(row @ base) - float(b)
    tail = -q / p
    return float(np.abs(base + (q / p) * d).sum() + abs(tail))
