import math

import numpy as np
import pytest

from pagelab.curvature import frame_sectionals, page_k01, riemann_frame
from pagelab.invariants import (
    NoSignChange,
    QuadratureError,
    SignChangeCertificate,
    bolt_geodesy_check,
    char_numbers,
    chebyshev_points,
    einstein_report,
    inequality_predicates,
    k_range_scan,
    sign_change_scan,
)
from pagelab.metrics import with_fd_derivatives

LAMBDA_PAGE = 3.238067303184691


def test_chebyshev_points():
    xs = chebyshev_points((0.0, 1.0), 7)
    assert (np.diff(xs) > 0).all() and xs[0] > 0 and xs[-1] < 1
    assert xs[3] == pytest.approx(0.5)


def test_einstein_round_sphere(s4):
    rep = einstein_report(s4, 32)
    assert rep.lambdaE == pytest.approx(3.0, abs=1e-12)
    assert rep.max_residual < 1e-10
    # 200 Chebyshev nodes come within 3e-5 of the nuts, where the frame
    # curvature loses about eps/t² to cancellation
    assert einstein_report(s4, 200).max_residual < 1e-6


def test_einstein_page(page_r, page_x):
    for m in (page_r, page_x):
        rep = einstein_report(m, 200)
        assert rep.samples == 200
        assert rep.max_residual < 1e-8
        assert rep.scalar_spread < 1e-8
        assert rep.lambdaE == pytest.approx(LAMBDA_PAGE, rel=1e-10)


def test_einstein_flat_and_fs(flat, fs):
    rep = einstein_report(flat, 50)
    assert rep.lambdaE == 0.0 and rep.max_residual < 1e-12
    assert einstein_report(fs, 60).lambdaE == pytest.approx(6.0, rel=1e-10)


def test_einstein_report_rejects_tiny_sample():
    with pytest.raises(ValueError):
        from pagelab.metrics import flat_metric

        einstein_report(flat_metric(), 1)


def test_non_einstein_detected(page_r):
    lit = type(page_r)("lit", page_r.profile, page_r.domain, page_r.convention, page_r.endpoints)
    from pagelab.metrics import page_metric_r

    assert einstein_report(page_metric_r(fibre_scale=1.0), 50).max_residual > 1e-2
    assert einstein_report(lit, 50).max_residual < 1e-8


def test_sign_change_examples():
    assert sign_change_scan(lambda x: 1.0, (-1, 1), 50) == NoSignChange(1.0, 1.0)
    cert = sign_change_scan(lambda x: x, (-1, 1), 1000)
    assert isinstance(cert, SignChangeCertificate)
    lo, hi = cert.bracket
    assert lo <= 0 <= hi and hi - lo < 1e-10
    assert cert.k_pos > 0 > cert.k_neg
    with pytest.raises(ValueError):
        sign_change_scan(lambda x: x, (-1, 1), 2)


def test_page_k01_sign_change(pc, page_x):
    cert = sign_change_scan(lambda x: page_k01(pc, page_x.convention, x), (-1, 1), 1000)
    assert isinstance(cert, SignChangeCertificate)
    assert cert.k_pos > 0 > cert.k_neg
    assert -1 < cert.x_pos < 1 and -1 < cert.x_neg < 1
    lo, hi = cert.bracket
    assert hi - lo < 1e-10
    assert page_k01(pc, page_x.convention, lo) * page_k01(pc, page_x.convention, hi) <= 0


def test_k_range_examples(s4, flat, fs):
    r = k_range_scan(s4, 8, 16)
    assert abs(r.k_min - 1) < 1e-8 and abs(r.k_max - 1) < 1e-8
    r = k_range_scan(flat, 4, 8)
    assert r.k_min == 0.0 and r.k_max == 0.0
    r = k_range_scan(fs, 16, 32)
    assert abs(r.k_min - 1) < 1e-4 and abs(r.k_max - 4) < 1e-4
    assert r.min_witness.k == r.k_min and r.max_witness.k == r.k_max
    u, v = r.max_witness.u, r.max_witness.v
    assert abs(u @ v) < 1e-10 and abs(u @ u - 1) < 1e-10
    with pytest.raises(ValueError):
        k_range_scan(fs, 0, 4)


def test_k_range_deterministic(page_x):
    a = k_range_scan(page_x, 6, 8, seed=3)
    b = k_range_scan(page_x, 6, 8, seed=3)
    assert (a.k_min, a.k_max) == (b.k_min, b.k_max)


def test_scan_dominance(catalog):
    for m in catalog.values():
        r = k_range_scan(m, 10, 16)
        assert r.k_min <= r.frame_min
        for t in chebyshev_points(m.domain, 10):
            ks = frame_sectionals(riemann_frame(m, float(t))).values()
            assert r.k_min <= min(ks) + 1e-15
            assert r.k_max >= max(ks) - 1e-15


@pytest.mark.parametrize(
    "name, chi, tau",
    [("page-r", 4.0, 0.0), ("page-x", 4.0, 0.0), ("s4", 2.0, 0.0), ("fs", 3.0, 1.0)],
)
def test_char_numbers(catalog, name, chi, tau):
    cn = char_numbers(catalog[name], 128)
    assert abs(cn.chi - chi) < 1e-4
    assert abs(cn.tau - tau) < 1e-4
    assert cn.chi_err < 1e-6 and cn.tau_err < 1e-6
    assert cn.order == 128


def test_char_numbers_stable(catalog):
    for name, m in catalog.items():
        if name == "flat":
            continue
        a, b = char_numbers(m, 64), char_numbers(m, 128)
        assert abs(a.chi - b.chi) < 1e-6 and abs(a.tau - b.tau) < 1e-6, name


def test_char_numbers_errors(s4):
    with pytest.raises(ValueError):
        char_numbers(s4, 4)
    with pytest.raises(QuadratureError):
        char_numbers(s4, 8, max_error=1e-30)


def test_bolt_checks(page_r, page_x, fs, s4):
    for m in (page_r,):
        for end in ("lower", "upper"):
            bc = bolt_geodesy_check(m, end)
            assert bc.profile_derivative_residual < 1e-6
            assert bc.shape_operator_limit < 1e-6
            assert bc.passed()
    bc = bolt_geodesy_check(fs, "lower")
    assert bc.passed()
    with pytest.raises(ValueError):
        bolt_geodesy_check(fs, "upper")
    with pytest.raises(ValueError):
        bolt_geodesy_check(s4, "lower")
    with pytest.raises(ValueError):
        bolt_geodesy_check(page_r, "middle")


def test_bolt_check_detects_bent_bolt(page_r):
    from pagelab.jets import Jet2

    prof = page_r.profile

    def bent(t):
        A, B, C, D = prof(t)
        s = 1 + 0.1 * t  # gives B² a slope at r = 0
        return A, B * s, C * s, D

    m = type(page_r)("bent", bent, page_r.domain, page_r.convention, page_r.endpoints)
    bc = bolt_geodesy_check(m, "lower")
    assert not bc.passed()
    assert bc.profile_derivative_residual > 1e-2


@pytest.mark.parametrize(
    "chi, tau, expect",
    [
        ((4, 0), None, (True, True, True)),
        ((6, -2), None, (True, True, False)),
        ((2, 0), None, (True, True, True)),
        ((3, 1), None, (True, True, False)),
        ((1.5, 1), None, (True, False, False)),
        ((10, 0), None, (True, True, False)),
    ],
)
def test_inequality_predicates(chi, tau, expect):
    r = inequality_predicates(*chi)
    assert (r.hitchin_thorpe, r.hitchin, r.gursky_lebrun) == expect


def test_inequality_slack():
    # equality cases within 1e-9 count as satisfied
    assert inequality_predicates(1.5 - 1e-10, 1.0).hitchin_thorpe
    assert not inequality_predicates(1.5 - 1e-8, 1.0).hitchin_thorpe
    assert inequality_predicates(9 + 1e-10, 0).gursky_lebrun


def test_fd_pipeline_matches_jets(page_r):
    jet = einstein_report(page_r, 60)
    fd = einstein_report(with_fd_derivatives(page_r), 60)
    assert abs(jet.lambdaE - fd.lambdaE) < 1e-4
    assert abs(fd.max_residual - jet.max_residual) < 1e-4
    # jets remove the truncation error of the differences
    assert jet.max_residual <= fd.max_residual
    for t in chebyshev_points(page_r.domain, 20):
        R1 = riemann_frame(page_r, float(t)).R
        R2 = riemann_frame(with_fd_derivatives(page_r), float(t)).R
        assert np.abs(R1 - R2).max() < 1e-4
