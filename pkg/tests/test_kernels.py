import math

import numpy as np
import pytest

from l1kernels import (
    DomainError,
    Interval,
    Status,
    UnsupportedKernel,
    bspline,
    brownian_bridge,
    build_system,
    closed_form_cardinal,
    exponential,
    gaussian,
    inverse_multiquadric,
    kernel_from_json,
    kernel_to_json,
    sinc,
    wendland_d3_k0,
    wendland_d3_k1,
)

ZOO = [
    exponential(),
    brownian_bridge(),
    gaussian(1.0),
    gaussian(0.2),
    inverse_multiquadric(0.5),
    inverse_multiquadric(2.0),
    wendland_d3_k0(),
    wendland_d3_k1(),
    bspline(2),
    bspline(3),
    bspline(6),
    sinc(),
]


def sample_domain(kernel, rng, size):
    dom = kernel.domain
    lo = dom.lo if dom.bounded else -3.0
    hi = dom.hi if dom.bounded else 3.0
    span = hi - lo
    return rng.uniform(lo + 1e-9 * span, hi - 1e-9 * span, size=size)


# ---------------------------------------------------------------------------
# evaluation


def test_eval_spot_values():
    assert exponential().eval(0.0, 0.0) == 1.0
    assert brownian_bridge().eval(0.25, 0.5) == pytest.approx(0.125, abs=0)
    assert gaussian(1.0).eval(0.0, 0.5) == pytest.approx(math.exp(-0.25), rel=1e-15)
    assert inverse_multiquadric(0.5).eval(0.0, 1.0) == pytest.approx(2.0 ** -0.5, rel=1e-15)
    assert wendland_d3_k0().eval(0.5, 0.0) == pytest.approx(0.25, rel=1e-15)
    assert wendland_d3_k1().eval(0.5, 0.0) == pytest.approx(0.5 ** 4 * 3.0, rel=1e-15)
    assert wendland_d3_k0().eval(2.0, 0.0) == 0.0
    assert sinc().eval(0.3, 0.3) == 1.0
    assert sinc().eval(2.0, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_bspline_values():
    b2 = bspline(2)
    assert b2.eval(0.0, 0.0) == 1.0
    assert b2.eval(0.5, 0.0) == pytest.approx(0.5, rel=1e-15)
    assert b2.eval(1.0, 0.0) == 0.0
    # order-4 centered spline peaks at 2/3
    assert bspline(4).eval(0.0, 0.0) == pytest.approx(2.0 / 3.0, rel=1e-12)


def test_eval_broadcasts():
    k = exponential()
    s = np.array([0.0, 1.0, -1.0])
    out = k.eval(s, 0.5)
    assert out.shape == (3,)
    assert np.allclose(out, np.exp(-np.abs(s - 0.5)))


def test_symmetry_exact_all_families():
    rng = np.random.default_rng(42)
    for kernel in ZOO:
        s = sample_domain(kernel, rng, 200)
        t = sample_domain(kernel, rng, 200)
        left = kernel.eval(s, t)
        right = kernel.eval(t, s)
        assert np.all(left == right), kernel.name


def test_boundedness_sampling():
    rng = np.random.default_rng(7)
    for kernel in ZOO:
        s = sample_domain(kernel, rng, 500)
        t = sample_domain(kernel, rng, 500)
        assert np.all(np.abs(kernel.eval(s, t)) <= kernel.bound + 1e-12), kernel.name


def test_brownian_bridge_bound_attained_at_center():
    assert brownian_bridge().eval(0.5, 0.5) == 0.25


def test_domain_errors():
    bb = brownian_bridge()
    with pytest.raises(DomainError):
        bb.eval(0.0, 0.5)
    with pytest.raises(DomainError):
        bb.eval(0.5, 1.0)
    k = exponential(Interval(-1.0, 1.0, lo_open=False, hi_open=False))
    with pytest.raises(DomainError):
        k.eval(0.0, 1.5)
    assert k.eval(-1.0, 1.0) == pytest.approx(math.exp(-2))


def test_parameter_validation():
    with pytest.raises(ValueError):
        gaussian(0.0)
    with pytest.raises(ValueError):
        gaussian(-1.0)
    with pytest.raises(ValueError):
        inverse_multiquadric(0.0)
    with pytest.raises(ValueError):
        bspline(1)
    with pytest.raises(ValueError):
        bspline(7)
    with pytest.raises(ValueError):
        bspline(2.5)
    with pytest.raises(ValueError):
        brownian_bridge(Interval(-0.1, 0.5))
    with pytest.raises(ValueError):
        brownian_bridge(Interval(0.0, 1.0, lo_open=False, hi_open=True))


def test_admissibility_metadata():
    for k in (exponential(), brownian_bridge()):
        assert all(
            getattr(k.flags, a) is Status.PROVEN for a in ("a1", "a2", "a3", "a4")
        )
    g = gaussian(1.0)
    assert g.flags.a4 is Status.DISPROVEN
    assert g.flags.a1 is Status.UNKNOWN
    assert inverse_multiquadric(0.5).flags.a4 is Status.DISPROVEN
    assert inverse_multiquadric(1.0).flags.a4 is Status.UNKNOWN
    assert sinc().flags.a3 is Status.DISPROVEN
    assert sinc().flags.a4 is Status.UNKNOWN
    assert wendland_d3_k1().flags.a4 is Status.UNKNOWN


# ---------------------------------------------------------------------------
# closed-form cardinal functions


def test_cardinal_brownian_interior_gap():
    w = closed_form_cardinal(brownian_bridge(), [0.2, 0.6], 0.4)
    assert np.allclose(w, [0.5, 0.5], atol=0)


def test_cardinal_exponential_right_tail():
    w = closed_form_cardinal(exponential(), [0.0, 1.0], 2.0)
    assert w[0] == 0.0
    assert w[1] == pytest.approx(math.exp(-1.0), rel=1e-15)


def test_cardinal_node_coincidence():
    w = closed_form_cardinal(exponential(), [0.0, 1.0], 0.0)
    assert np.array_equal(w, [1.0, 0.0])
    w = closed_form_cardinal(brownian_bridge(), [0.2, 0.6, 0.9], 0.6)
    assert np.array_equal(w, [0.0, 1.0, 0.0])


def test_cardinal_exponential_interior_sinh_form():
    w = closed_form_cardinal(exponential(), [0.0, 1.0], 0.5)
    expected = math.sinh(0.5) / math.sinh(1.0)
    assert w == pytest.approx([expected, expected], rel=1e-15)


def test_cardinal_brownian_left_tail():
    w = closed_form_cardinal(brownian_bridge(), [0.2, 0.6], 0.1)
    assert w == pytest.approx([0.5, 0.0], abs=0)


def test_cardinal_unsupported_family():
    with pytest.raises(UnsupportedKernel):
        closed_form_cardinal(gaussian(1.0), [0.0, 1.0], 0.5)


def test_cardinal_respects_user_order():
    # unsorted input: result aligned with the given order
    sorted_w = closed_form_cardinal(exponential(), [0.0, 1.0, 2.0], 0.7)
    shuffled = closed_form_cardinal(exponential(), [2.0, 0.0, 1.0], 0.7)
    assert shuffled == pytest.approx([sorted_w[2], sorted_w[0], sorted_w[1]], rel=0)


def test_cardinal_matches_numeric_solve():
    rng = np.random.default_rng(11)
    for kernel, lo, hi in [(exponential(), -3.0, 3.0), (brownian_bridge(), 0.01, 0.99)]:
        for _ in range(200):
            n = int(rng.integers(2, 31))
            x = np.sort(rng.uniform(lo, hi, size=n))
            while np.diff(x).min() < 1e-3 * (hi - lo):
                x = np.sort(rng.uniform(lo, hi, size=n))
            t = rng.uniform(lo, hi)
            system = build_system(kernel, x)
            closed = closed_form_cardinal(kernel, x, t)
            numeric = system.cardinal_coefficients(t)
            assert np.max(np.abs(closed - numeric)) <= 1e-9, kernel.name


def test_cardinal_l1_bound():
    rng = np.random.default_rng(5)
    for kernel, lo, hi in [(exponential(), -3.0, 3.0), (brownian_bridge(), 0.02, 0.98)]:
        for _ in range(100):
            n = int(rng.integers(2, 20))
            x = np.sort(rng.uniform(lo, hi, size=n))
            while np.diff(x).min() <= 0:
                x = np.sort(rng.uniform(lo, hi, size=n))
            t = rng.uniform(lo, hi)
            w = closed_form_cardinal(kernel, x, t)
            assert np.abs(w).sum() <= 1.0 + 1e-12


# ---------------------------------------------------------------------------
# JSON interchange


def test_json_round_trip_all_families():
    for kernel in ZOO:
        obj = kernel_to_json(kernel)
        back = kernel_from_json(obj)
        assert back == kernel


def test_json_minimal_forms():
    k = kernel_from_json({"family": "gaussian", "params": {"sigma": 2.0}})
    assert k.sigma == 2.0
    k = kernel_from_json({"family": "exponential", "params": {}, "domain": [-3, 3]})
    assert k.domain.lo == -3.0 and k.domain.bounded


def test_json_unknown_family():
    with pytest.raises(ValueError):
        kernel_from_json({"family": "laplacian_of_doom", "params": {}})
