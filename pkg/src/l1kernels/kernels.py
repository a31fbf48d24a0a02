"""Kernel zoo: evaluation, domains, and admissibility metadata.

Every kernel is described by an immutable :class:`KernelSpec` (family +
parameters + domain).  Evaluation is exact up to floating point and
vectorizes over numpy arrays.  Each family carries static flags recording
which of the four admissibility conditions

    (A1) every Gram matrix on pairwise-distinct points is nonsingular,
    (A2) |K(s,t)| <= M for a known bound M,
    (A3) no nontrivial absolutely-summable expansion sums to zero,
    (A4) cardinal coefficient vectors have l1 norm at most 1,

are settled analytically for it.  The two kernels with all four flags
proven (exponential and Brownian bridge) also expose closed-form cardinal
functions, used as oracles against the numeric linear-algebra path.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedKernel

__all__ = [
    "Family",
    "Status",
    "AdmissibilityFlags",
    "Interval",
    "KernelSpec",
    "exponential",
    "brownian_bridge",
    "gaussian",
    "inverse_multiquadric",
    "wendland_d3_k0",
    "wendland_d3_k1",
    "bspline",
    "sinc",
    "closed_form_cardinal",
    "kernel_from_json",
    "kernel_to_json",
]


class Family(enum.Enum):
    EXPONENTIAL = "exponential"
    BROWNIAN_BRIDGE = "brownian_bridge"
    GAUSSIAN = "gaussian"
    INVERSE_MULTIQUADRIC = "inverse_multiquadric"
    WENDLAND_D3_K0 = "wendland_d3_k0"
    WENDLAND_D3_K1 = "wendland_d3_k1"
    BSPLINE = "bspline"
    SINC = "sinc"


class Status(enum.Enum):
    """Analytic status of one admissibility condition for a kernel family."""

    PROVEN = "proven"
    DISPROVEN = "disproven"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class AdmissibilityFlags:
    a1: Status = Status.UNKNOWN
    a2: Status = Status.UNKNOWN
    a3: Status = Status.UNKNOWN
    a4: Status = Status.UNKNOWN

    def as_dict(self) -> dict:
        return {k: getattr(self, k).value for k in ("a1", "a2", "a3", "a4")}


_ALL_PROVEN = AdmissibilityFlags(Status.PROVEN, Status.PROVEN, Status.PROVEN, Status.PROVEN)


@dataclass(frozen=True)
class Interval:
    """Real interval with individually open or closed endpoints."""

    lo: float = -math.inf
    hi: float = math.inf
    lo_open: bool = True
    hi_open: bool = True

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, t) -> bool:
        t = np.asarray(t, dtype=float)
        above = (t > self.lo) if self.lo_open else (t >= self.lo)
        below = (t < self.hi) if self.hi_open else (t <= self.hi)
        return bool(np.all(above & below))

    def __str__(self) -> str:
        lb = "(" if self.lo_open else "["
        rb = ")" if self.hi_open else "]"
        return f"{lb}{self.lo}, {self.hi}{rb}"


_REAL_LINE = Interval()
_UNIT_OPEN = Interval(0.0, 1.0, lo_open=True, hi_open=True)

# Max order for B-spline kernels: the divided-difference recursion stays
# exact in double precision for small orders.
MAX_BSPLINE_ORDER = 6


@dataclass(frozen=True)
class KernelSpec:
    """Immutable description of one kernel: family, parameters, domain, flags.

    Use the module-level constructors (:func:`exponential`, :func:`gaussian`,
    ...) rather than building instances directly; they validate parameters
    and fill in the per-family admissibility flags and sup bound.
    """

    family: Family
    domain: Interval
    flags: AdmissibilityFlags
    bound: float
    sigma: float | None = None
    beta: float | None = None
    order: int | None = None

    @property
    def name(self) -> str:
        return self.family.value

    def _check_domain(self, *values) -> None:
        for v in values:
            if not self.domain.contains(v):
                raise DomainError(
                    f"point outside the {self.name} kernel domain {self.domain}"
                )

    def eval(self, s, t):
        """Evaluate K(s, t); broadcasts over array arguments.

        Raises DomainError when any argument falls outside the domain.
        """
        self._check_domain(s, t)
        s = np.asarray(s, dtype=float)
        t = np.asarray(t, dtype=float)
        out = _EVALUATORS[self.family](self, s, t)
        if out.ndim == 0:
            return float(out)
        return out


def _eval_exponential(spec, s, t):
    return np.exp(-np.abs(s - t))


def _eval_brownian_bridge(spec, s, t):
    return np.minimum(s, t) - s * t


def _eval_gaussian(spec, s, t):
    return np.exp(-((s - t) ** 2) / spec.sigma)


def _eval_inverse_multiquadric(spec, s, t):
    return (1.0 + (s - t) ** 2) ** (-spec.beta)


def _eval_wendland_d3_k0(spec, s, t):
    r = np.abs(s - t)
    return np.maximum(1.0 - r, 0.0) ** 2


def _eval_wendland_d3_k1(spec, s, t):
    r = np.abs(s - t)
    return np.maximum(1.0 - r, 0.0) ** 4 * (1.0 + 4.0 * r)


def _bspline_uncentered(p: int, x):
    """Order-p cardinal B-spline on [0, p] by the two-term recursion."""
    if p == 1:
        return np.where((x >= 0.0) & (x < 1.0), 1.0, 0.0)
    lower = _bspline_uncentered(p - 1, x)
    shifted = _bspline_uncentered(p - 1, x - 1.0)
    return (x * lower + (p - x) * shifted) / (p - 1)


def _eval_bspline(spec, s, t):
    # evaluate on |s - t|: the centered spline is even, and going through the
    # absolute value keeps eval(s, t) == eval(t, s) exact in floating point
    p = spec.order
    return _bspline_uncentered(p, np.abs(s - t) + p / 2.0)


def _eval_sinc(spec, s, t):
    return np.sinc(s - t)


_EVALUATORS = {
    Family.EXPONENTIAL: _eval_exponential,
    Family.BROWNIAN_BRIDGE: _eval_brownian_bridge,
    Family.GAUSSIAN: _eval_gaussian,
    Family.INVERSE_MULTIQUADRIC: _eval_inverse_multiquadric,
    Family.WENDLAND_D3_K0: _eval_wendland_d3_k0,
    Family.WENDLAND_D3_K1: _eval_wendland_d3_k1,
    Family.BSPLINE: _eval_bspline,
    Family.SINC: _eval_sinc,
}


# ---------------------------------------------------------------------------
# constructors


def exponential(domain: Interval | None = None) -> KernelSpec:
    """K(s,t) = exp(-|s-t|), all four admissibility conditions proven."""
    return KernelSpec(
        family=Family.EXPONENTIAL,
        domain=domain or _REAL_LINE,
        flags=_ALL_PROVEN,
        bound=1.0,
    )


def brownian_bridge(domain: Interval | None = None) -> KernelSpec:
    """K(s,t) = min(s,t) - s*t on (0,1), all four conditions proven."""
    dom = domain or _UNIT_OPEN
    inside = (
        dom.lo >= 0.0
        and dom.hi <= 1.0
        and (dom.lo > 0.0 or dom.lo_open)
        and (dom.hi < 1.0 or dom.hi_open)
    )
    if not inside:
        raise ValueError(f"Brownian bridge domain must lie strictly inside (0,1); got {dom}")
    return KernelSpec(
        family=Family.BROWNIAN_BRIDGE,
        domain=dom,
        flags=_ALL_PROVEN,
        bound=0.25,
    )


def gaussian(sigma: float = 1.0, domain: Interval | None = None) -> KernelSpec:
    """K(s,t) = exp(-(s-t)^2 / sigma).  Fails the unit Lebesgue bound (A4)."""
    if not sigma > 0:
        raise ValueError(f"gaussian sigma must be positive, got {sigma}")
    return KernelSpec(
        family=Family.GAUSSIAN,
        domain=domain or _REAL_LINE,
        flags=AdmissibilityFlags(a4=Status.DISPROVEN),
        bound=1.0,
        sigma=float(sigma),
    )


def inverse_multiquadric(beta: float, domain: Interval | None = None) -> KernelSpec:
    """K(s,t) = (1 + (s-t)^2)^(-beta).  beta = 1/2 is known to fail (A4)."""
    if not beta > 0:
        raise ValueError(f"inverse multiquadric beta must be positive, got {beta}")
    flags = AdmissibilityFlags(a4=Status.DISPROVEN) if beta == 0.5 else AdmissibilityFlags()
    return KernelSpec(
        family=Family.INVERSE_MULTIQUADRIC,
        domain=domain or _REAL_LINE,
        flags=flags,
        bound=1.0,
        beta=float(beta),
    )


def wendland_d3_k0(domain: Interval | None = None) -> KernelSpec:
    """Compactly supported kernel (1-r)_+^2 with r = |s-t|."""
    return KernelSpec(
        family=Family.WENDLAND_D3_K0,
        domain=domain or _REAL_LINE,
        flags=AdmissibilityFlags(),
        bound=1.0,
    )


def wendland_d3_k1(domain: Interval | None = None) -> KernelSpec:
    """Compactly supported kernel (1-r)_+^4 (1+4r) with r = |s-t|."""
    return KernelSpec(
        family=Family.WENDLAND_D3_K1,
        domain=domain or _REAL_LINE,
        flags=AdmissibilityFlags(),
        bound=1.0,
    )


def bspline(order: int, domain: Interval | None = None) -> KernelSpec:
    """Centered cardinal B-spline kernel B_p(s-t) of order p >= 2."""
    if not (isinstance(order, (int, np.integer)) and 2 <= order <= MAX_BSPLINE_ORDER):
        raise ValueError(
            f"B-spline order must be an integer in [2, {MAX_BSPLINE_ORDER}], got {order}"
        )
    return KernelSpec(
        family=Family.BSPLINE,
        domain=domain or _REAL_LINE,
        flags=AdmissibilityFlags(),
        bound=1.0,
        order=int(order),
    )


def sinc(domain: Interval | None = None) -> KernelSpec:
    """K(s,t) = sin(pi(s-t)) / (pi(s-t)).

    Included as the documented counterexample: distinct absolutely-summable
    expansions of sinc translates can sum to the same function (condition
    (A3) fails), so this kernel cannot back an l1-norm function space and
    the fitting operations reject it.
    """
    return KernelSpec(
        family=Family.SINC,
        domain=domain or _REAL_LINE,
        flags=AdmissibilityFlags(a3=Status.DISPROVEN),
        bound=1.0,
    )


_CONSTRUCTORS = {
    Family.EXPONENTIAL: exponential,
    Family.BROWNIAN_BRIDGE: brownian_bridge,
    Family.GAUSSIAN: gaussian,
    Family.INVERSE_MULTIQUADRIC: inverse_multiquadric,
    Family.WENDLAND_D3_K0: wendland_d3_k0,
    Family.WENDLAND_D3_K1: wendland_d3_k1,
    Family.BSPLINE: bspline,
    Family.SINC: sinc,
}


# ---------------------------------------------------------------------------
# closed-form cardinal functions


def closed_form_cardinal(kernel: KernelSpec, points, t: float) -> np.ndarray:
    """Cardinal coefficient vector K[x]^(-1) K_x(t) in closed form.

    Available for the exponential and Brownian bridge kernels, whose
    cardinal functions are piecewise explicit: one active node when t lies
    outside the hull of the points, the two bracketing nodes otherwise, and
    a standard basis vector when t coincides with a node.

    Parameters
    ----------
    kernel : KernelSpec
        Exponential or Brownian bridge spec.
    points : PointSet or array_like
        Pairwise-distinct sample points (any order; the result is returned
        in the same order).
    t : float
        Evaluation point inside the kernel domain.

    Returns
    -------
    numpy.ndarray, shape (n,)
        Coefficients aligned with the input point order.
    """
    if kernel.family not in (Family.EXPONENTIAL, Family.BROWNIAN_BRIDGE):
        raise UnsupportedKernel(
            f"no closed-form cardinal functions for the {kernel.name} kernel"
        )
    x_user = np.asarray(getattr(points, "points", points), dtype=float)
    if x_user.ndim != 1 or x_user.size == 0:
        raise ValueError("points must be a nonempty 1-D sequence")
    kernel._check_domain(x_user, t)
    order = np.argsort(x_user, kind="stable")
    x = x_user[order]
    t = float(t)

    w = np.zeros_like(x)
    exact = np.nonzero(x == t)[0]
    if exact.size:
        w[exact[0]] = 1.0
    elif kernel.family is Family.EXPONENTIAL:
        if t < x[0]:
            w[0] = math.exp(t - x[0])
        elif t > x[-1]:
            w[-1] = math.exp(x[-1] - t)
        else:
            j = int(np.searchsorted(x, t)) - 1
            gap = math.sinh(x[j + 1] - x[j])
            w[j] = math.sinh(x[j + 1] - t) / gap
            w[j + 1] = math.sinh(t - x[j]) / gap
    else:  # Brownian bridge
        if t < x[0]:
            w[0] = t / x[0]
        elif t > x[-1]:
            w[-1] = (1.0 - t) / (1.0 - x[-1])
        else:
            j = int(np.searchsorted(x, t)) - 1
            gap = x[j + 1] - x[j]
            w[j] = (x[j + 1] - t) / gap
            w[j + 1] = (t - x[j]) / gap

    out = np.zeros_like(w)
    out[order] = w
    return out


# ---------------------------------------------------------------------------
# JSON interchange


def kernel_to_json(kernel: KernelSpec) -> dict:
    """Serialize a spec to {"family": ..., "params": {...}, "domain": ...}."""
    params: dict = {}
    if kernel.sigma is not None:
        params["sigma"] = kernel.sigma
    if kernel.beta is not None:
        params["beta"] = kernel.beta
    if kernel.order is not None:
        params["order"] = kernel.order
    dom = kernel.domain
    obj = {
        "family": kernel.family.value,
        "params": params,
        "domain": [
            None if not math.isfinite(dom.lo) else dom.lo,
            None if not math.isfinite(dom.hi) else dom.hi,
        ],
        "domain_open": [dom.lo_open, dom.hi_open],
    }
    return obj


def kernel_from_json(obj: dict) -> KernelSpec:
    """Build a spec from {"family": ..., "params": {...}} (domain optional)."""
    try:
        family = Family(obj["family"])
    except (KeyError, ValueError):
        known = ", ".join(f.value for f in Family)
        raise ValueError(f"unknown kernel family {obj.get('family')!r}; expected one of: {known}")
    params = dict(obj.get("params") or {})
    domain = None
    if obj.get("domain") is not None:
        lo, hi = obj["domain"]
        lo = -math.inf if lo is None else float(lo)
        hi = math.inf if hi is None else float(hi)
        lo_open, hi_open = obj.get("domain_open", [not math.isfinite(lo), not math.isfinite(hi)])
        domain = Interval(lo, hi, bool(lo_open), bool(hi_open))
    return _CONSTRUCTORS[family](**params, domain=domain)
