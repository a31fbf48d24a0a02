"""Gram systems: the dense linear algebra under every higher-level operation.

A :class:`GramSystem` bundles a kernel, a validated point set, the Gram
matrix K[x] with entry (j, k) = K(x_k, x_j), its pivoted LU factorization,
and a reciprocal condition estimate.  The entry convention follows the
defining formula rather than assuming symmetry, so a non-symmetric kernel
added later cannot silently transpose the interpolation formulas; for the
symmetric zoo the matrix is symmetric anyway.

LU with partial pivoting is used instead of Cholesky on purpose: Gram
matrices here are nonsingular by the admissibility condition (A1) but need
not be positive definite (the Brownian bridge Gram is, the sinc Gram on
non-integer points need not be).
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, DomainError, DuplicatePoints, SingularGram
from .kernels import KernelSpec

__all__ = [
    "PointSet",
    "Side",
    "CoefficientVector",
    "GramSystem",
    "build_system",
    "kx_column",
    "kx_row",
    "solve",
    "cardinal_coefficients",
]

# Reciprocal condition estimates below this are treated as singular: at the
# double-precision noise floor, (A1) nonsingularity is no longer observable.
RCOND_FLOOR = 1e-14


class Side(enum.Enum):
    """Which slot of K(.,.) the expansion points occupy.

    LEFT:  sum_j c_j K(x_j, .)   — the l1-norm space.
    RIGHT: sum_j c_j K(., x_j)   — the sup-norm companion space.
    """

    LEFT = "left"
    RIGHT = "right"


class PointSet:
    """Ordered, pairwise-distinct real sample points.

    Points are kept in user order; a sorted permutation is retained for the
    closed-form cardinal formulas that need ascending nodes.
    """

    __slots__ = ("points", "sorted_indices", "min_spacing")

    def __init__(self, points):
        pts = np.array(points, dtype=float, copy=True).reshape(-1)
        if pts.size == 0:
            raise ValueError("a point set needs at least one point")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        order = np.argsort(pts, kind="stable")
        spacing = np.diff(pts[order])
        if pts.size > 1 and not np.all(spacing > 0.0):
            raise DuplicatePoints("point set contains coincident points")
        pts.flags.writeable = False
        order.flags.writeable = False
        self.points = pts
        self.sorted_indices = order
        self.min_spacing = float(spacing.min()) if pts.size > 1 else np.inf

    @property
    def n(self) -> int:
        return self.points.size

    def __len__(self) -> int:
        return self.points.size

    def __repr__(self) -> str:
        return f"PointSet({self.points.tolist()!r})"


@dataclass(frozen=True)
class CoefficientVector:
    """Expansion coefficients tagged with their side."""

    values: np.ndarray
    side: Side

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).reshape(-1)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.values.size


class GramSystem:
    """Kernel + points + factorized Gram matrix.  Immutable once built."""

    __slots__ = ("kernel", "points", "gram", "factorization", "rcond_estimate")

    def __init__(self, kernel: KernelSpec, points: PointSet, gram, factorization, rcond):
        self.kernel = kernel
        self.points = points
        self.gram = gram
        self.factorization = factorization
        self.rcond_estimate = rcond

    @property
    def n(self) -> int:
        return self.points.n

    def kx_column(self, t: float) -> np.ndarray:
        """K_x(t) = (K(t, x_j))_j."""
        return np.atleast_1d(self.kernel.eval(t, self.points.points))

    def kx_row(self, t: float) -> np.ndarray:
        """K^x(t) = (K(x_j, t))_j."""
        return np.atleast_1d(self.kernel.eval(self.points.points, t))

    def solve(self, y) -> np.ndarray:
        """Solve K[x] c = y through the stored factorization."""
        y = np.asarray(y, dtype=float)
        if y.shape != (self.n,):
            raise DimensionMismatch(f"expected right-hand side of length {self.n}, got shape {y.shape}")
        return scipy.linalg.lu_solve(self.factorization, y)

    def solve_transpose(self, y) -> np.ndarray:
        """Solve K[x]^T c = y through the stored factorization."""
        y = np.asarray(y, dtype=float)
        if y.shape != (self.n,):
            raise DimensionMismatch(f"expected right-hand side of length {self.n}, got shape {y.shape}")
        return scipy.linalg.lu_solve(self.factorization, y, trans=1)

    def solve_matrix(self, ys: np.ndarray) -> np.ndarray:
        """Column-wise solve: K[x] C = Y for an (n, m) right-hand side."""
        ys = np.asarray(ys, dtype=float)
        if ys.ndim != 2 or ys.shape[0] != self.n:
            raise DimensionMismatch(f"expected an ({self.n}, m) right-hand side, got shape {ys.shape}")
        return scipy.linalg.lu_solve(self.factorization, ys)

    def cardinal_coefficients(self, t: float) -> np.ndarray:
        """K[x]^(-1) K_x(t): interpolation weights of the kernel basis at t."""
        return self.solve(self.kx_column(t))

    def cardinal_matrix(self, ts) -> np.ndarray:
        """Cardinal coefficient vectors for many evaluation points at once.

        Returns an (n, m) array whose i-th column is cardinal_coefficients(ts[i]).
        """
        ts = np.asarray(ts, dtype=float).reshape(-1)
        if not self.kernel.domain.contains(ts):
            raise DomainError(f"grid leaves the kernel domain {self.kernel.domain}")
        kx = self.kernel.eval(ts[None, :], self.points.points[:, None])
        return self.solve_matrix(kx)

    def __repr__(self) -> str:
        return (
            f"GramSystem({self.kernel.name}, n={self.n}, "
            f"rcond={self.rcond_estimate:.2e})"
        )


def build_system(kernel: KernelSpec, points) -> GramSystem:
    """Build and factorize the Gram system for a kernel and point set.

    Raises
    ------
    DuplicatePoints
        If the points are not pairwise distinct.
    DomainError
        If a point falls outside the kernel domain.
    SingularGram
        If the reciprocal condition estimate drops below 1e-14.  Condition
        (A1) rules this out exactly, so hitting it signals conditioning
        trouble; the message reports the minimum point spacing.
    """
    if not isinstance(points, PointSet):
        points = PointSet(points)
    x = points.points
    if not kernel.domain.contains(x):
        raise DomainError(f"points leave the {kernel.name} kernel domain {kernel.domain}")
    # entry (j, k) = K(x_k, x_j): rows follow the second argument
    gram = np.asarray(kernel.eval(x[None, :], x[:, None]), dtype=float)
    if gram.shape == ():
        gram = gram.reshape(1, 1)
    gram.flags.writeable = False

    # getrf warns (LinAlgWarning) on an exactly zero pivot rather than raising;
    # the rcond floor below is the single singularity gate either way.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(gram)
    rcond = _rcond_from_lu(gram, lu)
    if rcond < RCOND_FLOOR:
        raise SingularGram(
            f"Gram matrix numerically singular: rcond {rcond:.3e} < {RCOND_FLOOR:.0e} "
            f"(n={points.n}, min spacing {points.min_spacing:.3e})",
            rcond=rcond,
        )
    return GramSystem(kernel, points, gram, (lu, piv), rcond)


def _rcond_from_lu(gram: np.ndarray, lu: np.ndarray) -> float:
    """1-norm reciprocal condition estimate from an LU factor (LAPACK gecon)."""
    gecon = scipy.linalg.get_lapack_funcs("gecon", (lu,))
    anorm = np.linalg.norm(gram, 1)
    rcond, info = gecon(lu, anorm, norm="1")
    if info != 0:
        raise SingularGram(f"condition estimation failed (LAPACK info={info})", rcond=0.0)
    return float(rcond)


# Functional aliases mirroring the method API.

def kx_column(system: GramSystem, t: float) -> np.ndarray:
    return system.kx_column(t)


def kx_row(system: GramSystem, t: float) -> np.ndarray:
    return system.kx_row(t)


def solve(system: GramSystem, y) -> np.ndarray:
    return system.solve(y)


def cardinal_coefficients(system: GramSystem, t: float) -> np.ndarray:
    return system.cardinal_coefficients(t)
