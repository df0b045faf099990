"""Input-sensitivity series, line fitting, transition detection."""

import numpy as np
import pytest

from progmeter import compress, eca, programmability as pr


def test_series_matches_manual_pipeline():
    """Full independent reconstruction of d(t') from public pieces."""
    rule, width, n, t_max, t_step = 110, 8, 6, 10, 5
    series = pr.variability_series(rule, width, n, t_max, t_step)
    inputs = eca.gray_inputs(n, width)
    for k, t in enumerate(range(t_step, t_max + 1, t_step)):
        cs = []
        for j in range(n):
            diag = eca.evolve(rule, inputs[j], t)
            text = compress.serialize_diagram(diag, "ascii")
            body = text[width + 1 :]  # drop the echoed input row
            cs.append(compress.compressed_size_bits(body))
        expected = sum(abs(cs[j + 1] - cs[j]) for j in range(n - 1)) / (t * (n - 1))
        assert series.points[k] == (t, pytest.approx(expected))


def test_null_rule_series_is_exactly_zero():
    series = pr.variability_series(0, width=12, n=8, t_max=60, t_step=20)
    assert all(d == 0.0 for _, d in series.points)


def test_identity_rule_series_decays():
    # rule 204 copies the input forever; the difference sum stays bounded
    # so normalization by t' makes d non-increasing after the first point
    series = pr.variability_series(204, width=12, n=16, t_max=200, t_step=20)
    d0 = series.points[0][1]
    for t, d in series.points[1:]:
        assert d <= d0


def test_chaotic_rule_series_positive():
    series = pr.variability_series(30, width=12, n=16, t_max=200, t_step=20)
    assert all(d > 0 for _, d in series.points)


def test_series_normalization_is_integral():
    # d(t') * t' * (n - 1) recovers the integer bit-difference sum
    series = pr.variability_series(110, width=10, n=8, t_max=40, t_step=10)
    for t, d in series.points:
        total = d * t * (series.n - 1)
        assert abs(total - round(total)) < 1e-6


def test_series_validation():
    with pytest.raises(ValueError):
        pr.variability_series(30, width=8, n=1, t_max=10, t_step=5)
    with pytest.raises(ValueError):
        pr.variability_series(30, width=8, n=4, t_max=10, t_step=0)
    with pytest.raises(ValueError):
        pr.variability_series(30, width=8, n=4, t_max=10, t_step=3)


def test_fit_line_exact_cases():
    slope, intercept, r2 = pr.fit_line([(0, 1), (1, 3), (2, 5)])
    assert (slope, intercept, r2) == (pytest.approx(2.0), pytest.approx(1.0),
                                      pytest.approx(1.0))
    slope, intercept, r2 = pr.fit_line([(0, 5), (10, 5)])
    assert (slope, intercept, r2) == (pytest.approx(0.0), pytest.approx(5.0),
                                      pytest.approx(1.0))
    # symmetric tent: zero slope, intercept at the mean
    slope, intercept, r2 = pr.fit_line([(0, 0), (1, 1), (2, 0)])
    assert slope == pytest.approx(0.0)
    assert intercept == pytest.approx(1.0 / 3.0)
    assert r2 == pytest.approx(0.0)


def test_fit_line_against_polyfit():
    rng = np.random.default_rng(2024)
    for _ in range(25):
        m = int(rng.integers(2, 12))
        x = rng.normal(0, 10, m)
        x[1] = x[0] + 1.0  # guarantee spread
        y = rng.normal(0, 100, m)
        slope, intercept, _ = pr.fit_line(list(zip(x, y)))
        ref_slope, ref_intercept = np.polyfit(x, y, 1)
        assert slope == pytest.approx(ref_slope, rel=1e-9, abs=1e-9)
        assert intercept == pytest.approx(ref_intercept, rel=1e-9, abs=1e-9)


def test_fit_line_validation():
    with pytest.raises(ValueError):
        pr.fit_line([(1, 1)])
    with pytest.raises(ValueError):
        pr.fit_line([(2, 1), (2, 5), (2, 9)])


def test_coefficient_null_rule_vanishes():
    report = pr.programmability_coefficient(0)
    assert abs(report.slope) < 1e-4
    assert report.slope == 0.0


def test_coefficient_consistent_with_fit():
    report = pr.programmability_coefficient(22, width=10, n=8, t_max=100, t_step=20)
    slope, intercept, r2 = pr.fit_line(report.series.points)
    assert report.slope == slope
    assert report.intercept == intercept
    assert report.r_squared == r2


def test_coefficient_deterministic():
    a = pr.programmability_coefficient(30, width=10, n=8, t_max=60, t_step=20)
    b = pr.programmability_coefficient(30, width=10, n=8, t_max=60, t_step=20)
    assert a == b


def test_report_to_dict_layout():
    report = pr.programmability_coefficient(30, width=8, n=4, t_max=40, t_step=20)
    d = report.to_dict()
    assert d["rule"] == 30 and d["width"] == 8 and d["n"] == 4
    assert d["t_max"] == 40 and d["t_step"] == 20
    assert d["compressor"] == "builtin-lzss"
    assert [p["t"] for p in d["points"]] == [20, 40]
    assert d["slope"] == report.slope


def test_input_variability_null_rule():
    assert pr.input_variability(0, width=12, n=8, t=40) == 0.0


def test_input_variability_orders_rules():
    v0 = pr.input_variability(0, width=12, n=16, t=100)
    v110 = pr.input_variability(110, width=12, n=16, t=100)
    assert v110 > v0


def test_input_variability_validation():
    with pytest.raises(ValueError):
        pr.input_variability(30, width=8, n=1, t=10)


def test_detect_transitions_step_change():
    assert pr.detect_transitions([100, 100, 100, 400, 400], z=2) == [2]


def test_detect_transitions_constant():
    assert pr.detect_transitions([7, 7, 7, 7], z=1) == []


def test_detect_transitions_uniform_slope():
    # equal consecutive differences: zero deviation, no transitions
    assert pr.detect_transitions([0, 10, 20, 30], z=0.5) == []


def test_detect_transitions_validation():
    with pytest.raises(ValueError):
        pr.detect_transitions([1, 2], z=1)
    with pytest.raises(ValueError):
        pr.detect_transitions([1, 2, 3], z=0)
