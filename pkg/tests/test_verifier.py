import json
import math
import os

import pytest

from grs4.errors import ConfigError, ParamError, StepError
from grs4.meridians import build_family, descriptor_from_catalog
from grs4.reporting import report_json_bytes
from grs4.surfaces import surface_from_family
from grs4.verifier import (admissible_domain, cross_check,
                           default_suite_config, fd_connection_check,
                           h_numerator_identity, random_point_sweep,
                           run_suite, verify_family)


def spec_for(case, params=None, **kw):
    return surface_from_family(build_family(
        descriptor_from_catalog(case, params, **kw)))


# ---------------------------------------------------------------------------
# FD connection oracle

def test_fd_connection_residuals_small():
    spec = spec_for("pnmcv-ell", {"C": 2.0}, alpha=1.0, beta=3.0)
    rows = fd_connection_check(spec, 3.0, 0.7, 1e-4)
    assert len(rows) == 8
    assert all(r <= 1e-6 for _, r in rows)


def test_fd_connection_second_order_shrinkage():
    spec = spec_for("pnmcv-ell", {"C": 2.0}, alpha=1.0, beta=3.0)
    rows_h = dict(fd_connection_check(spec, 3.0, 0.7, 1e-4))
    rows_h2 = dict(fd_connection_check(spec, 3.0, 0.7, 5e-5))
    checked = 0
    for name, r in rows_h.items():
        if r > 2.5e-10:
            ratio = r / rows_h2[name]
            assert 3.5 <= ratio <= 4.5, name
            checked += 1
    assert checked >= 6


def test_fd_connection_hyperbolic():
    spec = spec_for("min-hyp-i", {"c": 1.0}, alpha=2.0, beta=1.0)
    rows = fd_connection_check(spec, 1.3, 0.4, 1e-4)
    assert all(r <= 1e-6 for _, r in rows)


def test_fd_connection_geodesic_rows_at_noise_level():
    spec = spec_for("custom", {"f": "0.8*u", "g": "u", "kind": "hyperbolic"},
                    alpha=1.0, beta=1.0, interval=(0.5, 3.0))
    rows = dict(fd_connection_check(spec, 1.5, 0.4, 1e-4))
    assert rows["nabla_x x"] <= 5e-9
    assert rows["nabla_y y"] <= 5e-9


def test_fd_step_error_near_boundary():
    spec = spec_for("pnmcv-ell", {"C": 2.0}, alpha=1.0, beta=3.0)
    with pytest.raises(StepError):
        fd_connection_check(spec, 2.1, 0.0, 0.2)  # u - h < C


# ---------------------------------------------------------------------------
# Cross checks

def test_cross_check_exact_zero_family():
    spec = spec_for("fnc-ell-i", {"c": 1.2}, alpha=1.0, beta=2.0)
    k_res, kp_res = cross_check(spec, 1.0)
    assert k_res.max_residual <= 1e-15
    assert kp_res.max_residual <= 1e-15


def test_cross_check_min_hyp_i():
    spec = spec_for("min-hyp-i", {"c": 1.0}, alpha=2.0, beta=1.0)
    k_res, kp_res = cross_check(spec, 1.0)
    assert k_res.max_residual <= 1e-13
    assert kp_res.max_residual <= 1e-13


def test_cross_check_random_sweep():
    import random
    rng = random.Random(3)
    from grs4.meridians import classified_case_ids
    worst = 0.0
    for case in classified_case_ids():
        desc = descriptor_from_catalog(case)
        spec = surface_from_family(build_family(desc))
        ivs = admissible_domain(spec, *desc.interval, 128)
        if not ivs:
            continue
        a, b = ivs[0]
        for _ in range(7):
            u = rng.uniform(a + 0.02 * (b - a), b - 0.02 * (b - a))
            k_res, kp_res = cross_check(spec, u)
            worst = max(worst, k_res.max_residual, kp_res.max_residual)
    assert worst <= 1e-11


# ---------------------------------------------------------------------------
# Admissible domain scanning

def test_min_ell_i_empty_domain():
    spec = spec_for("min-ell-i", {"c": 1.0}, alpha=2.0, beta=1.0,
                    interval=(0.1, 10.0))
    assert admissible_domain(spec, 0.1, 10.0, 400) == []


def test_pnmcv_full_interval():
    spec = spec_for("pnmcv-ell", {"C": 2.0}, alpha=1.0, beta=3.0,
                    interval=(2.05, 10.0))
    ivs = admissible_domain(spec, 2.05, 10.0, 200)
    assert len(ivs) == 1
    assert ivs[0][0] == pytest.approx(2.05, abs=1e-9)
    assert ivs[0][1] == pytest.approx(10.0, abs=1e-9)


def test_fnc_ell_i_full_interval():
    spec = spec_for("fnc-ell-i", {"c": 1.2}, alpha=1.0, beta=2.0,
                    interval=(0.5, 10.0))
    ivs = admissible_domain(spec, 0.5, 10.0, 200)
    assert len(ivs) == 1


def test_boundary_located_by_bisection():
    # pnmcv-ell with alpha > beta: admissible only below sqrt(a^2 C^2/(a^2-b^2))
    spec = spec_for("pnmcv-ell", {"C": 2.0}, alpha=2.0, beta=1.0,
                    interval=(2.05, 10.0))
    ivs = admissible_domain(spec, 2.05, 10.0, 400)
    cutoff = math.sqrt(4.0 * 4.0 / 3.0)
    assert len(ivs) == 1
    assert ivs[0][1] == pytest.approx(cutoff, abs=1e-9)


def test_scan_requires_two_points():
    spec = spec_for("pnmcv-ell", {"C": 2.0})
    with pytest.raises(ValueError):
        admissible_domain(spec, 2.1, 6.0, 1)


# ---------------------------------------------------------------------------
# verify_family

def test_verify_family_passes():
    rep = verify_family("pnmcv-ell")
    assert rep.passed
    names = {c.name for c in rep.checks}
    assert {"pnmcv-beta2", "pnmcv-h-norm2", "frame-orthonormality",
            "chen-trace", "quasi-minimal-off-component",
            "gauss-equation-route", "fd-connection"} <= names


def test_verify_family_vacuous_empty_domain():
    rep = verify_family("min-ell-i")
    assert rep.passed  # vacuous pass
    vac = {c.name for c in rep.vacuous_checks}
    assert "minimal-h-coeff" in vac
    assert any("empty admissible domain" in c.notes for c in rep.vacuous_checks)
    hid = [c for c in rep.checks if c.name == "h-numerator-identity"]
    assert len(hid) == 1 and hid[0].passed and not hid[0].vacuous


def test_verify_family_negative_control():
    rep = verify_family("custom",
                        {"f": "u**2", "g": "u", "kind": "elliptic"},
                        alpha=1.0, beta=3.0, u_range=(0.6, 2.8),
                        checks=["minimal"])
    assert not rep.passed
    res = {c.name: c for c in rep.checks}
    assert res["minimal-h-coeff"].max_residual > 1e-3


def test_verify_family_param_error_propagates():
    with pytest.raises(ParamError):
        verify_family("flat-ell-ii", {"C": 4.0})


def test_verify_family_stale_state0_rejected_not_vacuous():
    # re-ranging an integrated family without moving state0 onto the
    # constraint at the new span start is a configuration error, not an
    # empty admissible domain
    with pytest.raises(ParamError, match="constraint"):
        verify_family("flat-ell-i", u_range=(1.2, 1.6))


def test_verify_family_optional_parallel_H():
    rep = verify_family("pnmcv-ell", include_parallel_H_fd=True)
    byname = {c.name: c for c in rep.checks}
    assert "parallel-H-fd" in byname
    assert byname["parallel-H-fd"].passed


def test_report_json_schema():
    rep = verify_family("fnc-ell-i")
    payload = rep.to_json()
    assert set(payload) == {"family", "params", "alpha", "beta", "grid",
                            "checks", "pass", "runtime_s"}
    for c in payload["checks"]:
        assert set(c) == {"name", "max_residual", "tolerance", "pass",
                          "vacuous", "notes"}


# ---------------------------------------------------------------------------
# Suites

def test_run_suite_empty_config():
    rep = run_suite({})
    assert rep.passed
    assert rep.to_json()["jobs"] == []


def test_run_suite_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        run_suite({"job": []})
    with pytest.raises(ConfigError):
        run_suite({"jobs": [{"family": "pnmcv-ell", "oops": 1}]})
    with pytest.raises(ConfigError):
        run_suite({"jobs": [{}]})
    with pytest.raises(ConfigError):
        run_suite({"jobs": [{"family": "pnmcv-ell", "expect": "maybe"}]})


def test_suite_failing_case_fails_suite():
    config = {"jobs": [
        {"family": "custom",
         "params": {"f": "u**2", "g": "u", "kind": "elliptic"},
         "alpha": 1.0, "beta": 3.0, "u0": 0.6, "u1": 2.8,
         "checks": ["minimal"]},
    ]}
    rep = run_suite(config)
    assert not rep.passed


def test_suite_expect_fail_satisfied_by_failure():
    config = {"jobs": [
        {"family": "custom",
         "params": {"f": "u**2", "g": "u", "kind": "elliptic"},
         "alpha": 1.0, "beta": 3.0, "u0": 0.6, "u1": 2.8,
         "checks": ["minimal"], "expect": "fail"},
    ]}
    rep = run_suite(config)
    assert rep.passed


def test_default_suite_deterministic():
    cfg = default_suite_config()
    b1 = report_json_bytes(run_suite(cfg).to_json())
    b2 = report_json_bytes(run_suite(cfg).to_json())
    assert b1 == b2


def test_sweep_deterministic_and_seed_sensitive():
    s1 = random_point_sweep(40, 7, 1e-12)
    s2 = random_point_sweep(40, 7, 1e-12)
    s3 = random_point_sweep(40, 8, 1e-12)
    assert [c.max_residual for c in s1] == [c.max_residual for c in s2]
    assert [c.max_residual for c in s1] != [c.max_residual for c in s3]
    assert all(c.passed for c in s1)


def test_h_numerator_identity_check():
    spec = spec_for("min-ell-i", interval=(0.1, 10.0))
    res = h_numerator_identity(spec, 0.1, 10.0)
    assert res.passed and res.max_residual <= 1e-12


def test_thread_cap_gives_same_results():
    base = verify_family("fnc-ell-i")
    os.environ["GRS_THREADS"] = "4"
    try:
        threaded = verify_family("fnc-ell-i")
    finally:
        del os.environ["GRS_THREADS"]
    a = json.dumps(base.to_json())
    b = json.dumps(threaded.to_json())
    # runtime differs; compare everything else
    assert json.loads(a)["checks"] == json.loads(b)["checks"]
