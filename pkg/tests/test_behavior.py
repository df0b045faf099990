"""Compression curves and behavior-class estimation."""

import numpy as np
import pytest

from progmeter import behavior, compress, eca


def test_curve_grid_and_prefix_semantics():
    init = eca.random_config(20, seed=3)
    curve = behavior.compression_curve(30, init, t_max=12, t_step=3)
    assert [t for t, _ in curve.points] == [3, 6, 9, 12]
    # prefix slicing must agree with re-evolving to each depth separately
    for t, c in curve.points:
        d = eca.evolve(30, init, t)
        text = compress.serialize_diagram(d, "ascii")
        assert c == compress.compressed_size_bits(text)


def test_curve_single_point():
    init = eca.single_cell_config(9)
    curve = behavior.compression_curve(30, init, t_max=5, t_step=5)
    assert len(curve.points) == 1
    assert curve.points[0][0] == 5


def test_curve_grid_validation():
    init = eca.single_cell_config(9)
    with pytest.raises(ValueError):
        behavior.compression_curve(30, init, t_max=10, t_step=0)
    with pytest.raises(ValueError):
        behavior.compression_curve(30, init, t_max=4, t_step=5)
    with pytest.raises(ValueError):
        behavior.compression_curve(30, init, t_max=10, t_step=3)


@pytest.mark.parametrize("rule", [0, 30, 110])
def test_curve_nearly_nondecreasing(rule):
    """A longer prefix can cost at most one container header less than a
    shorter one; modulo that overhead c_bits must not decrease."""
    init = eca.random_config(40, seed=11)
    curve = behavior.compression_curve(rule, init, t_max=60, t_step=6)
    cs = [c for _, c in curve.points]
    slack = 8 * compress.HEADER_LEN
    for a, b in zip(cs, cs[1:]):
        assert b >= a - slack


def test_ratio_zero_diagram_low():
    d = eca.evolve(0, np.zeros(100, dtype=np.uint8), 100)
    assert behavior.compression_ratio(d) < 0.05


def test_ratio_chaotic_diagram_high():
    d = eca.evolve(30, eca.random_config(101, seed=9), 100)
    assert behavior.compression_ratio(d) > 0.3


def test_ratio_tiny_diagram_exceeds_one():
    # container header dominates: 1 row of 3 cells
    d = eca.SpaceTimeDiagram(rule=0, cells=np.zeros((1, 3), dtype=np.uint8))
    assert behavior.compression_ratio(d) > 1.0


def _flat_curve(points):
    return behavior.CompressionCurve(rule=0, input=np.zeros(3, dtype=np.uint8),
                                     points=tuple(points), compressor="builtin-lzss")


def test_asymptotic_slope_exact():
    assert behavior.asymptotic_slope(
        _flat_curve([(10, 100), (20, 100), (30, 100)])) == pytest.approx(0.0)
    assert behavior.asymptotic_slope(
        _flat_curve([(10, 100), (20, 200), (30, 300)])) == pytest.approx(10.0)


def test_asymptotic_slope_uses_latter_half():
    # early transient is ignored: slope comes from t > t_max/2
    pts = [(10, 1000), (20, 1010), (30, 1020), (40, 1030)]
    assert behavior.asymptotic_slope(_flat_curve(pts)) == pytest.approx(1.0)
    pts = [(10, 5000), (20, 1010), (30, 1020), (40, 1030)]
    assert behavior.asymptotic_slope(_flat_curve(pts)) == pytest.approx(1.0)


def test_asymptotic_slope_needs_two_points():
    with pytest.raises(ValueError):
        behavior.asymptotic_slope(_flat_curve([(10, 100)]))


def test_chaotic_slope_exceeds_null_slope():
    init = eca.random_config(100, seed=behavior.DEFAULT_CLASSIFY_SEED)
    c30 = behavior.compression_curve(30, init, t_max=100, t_step=10)
    c0 = behavior.compression_curve(0, init, t_max=100, t_step=10)
    assert behavior.asymptotic_slope(c30) > behavior.asymptotic_slope(c0)


def test_thresholds_load():
    th = behavior.load_thresholds()
    assert set(th) >= {
        "terminal_ratio_class1_max",
        "terminal_ratio_class3_min",
        "input_variability_class2_min",
    }
    assert 0 < th["terminal_ratio_class1_max"] < th["terminal_ratio_class3_min"] <= 1


@pytest.mark.parametrize(
    "rule,expected",
    [(160, "class1"), (108, "class2"), (30, "class3"), (54, "class4")],
)
def test_classify_archetypes(rule, expected):
    est = behavior.classify_rule(rule)
    assert est.label == expected


def test_classify_homogeneous_extremes():
    assert behavior.classify_rule(0).label == "class1"
    assert behavior.classify_rule(255).label == "class1"


def test_classify_deterministic():
    a = behavior.classify_rule(110)
    b = behavior.classify_rule(110)
    assert a == b


def test_classify_threshold_override():
    # widen the middle band to cover everything; any rule with nonzero
    # input spread then lands in class2
    th = {
        "terminal_ratio_class1_max": -1.0,
        "terminal_ratio_class3_min": 2.0,
        "input_variability_class2_min": 0.0,
    }
    est = behavior.classify_rule(30, thresholds=th)
    assert est.label == "class2"


def test_classify_validation():
    with pytest.raises(ValueError):
        behavior.classify_rule(30, width=2)
    with pytest.raises(ValueError):
        behavior.classify_rule(30, n_inputs=0)


def test_curve_to_csv_layout():
    init = eca.single_cell_config(9)
    curve = behavior.compression_curve(30, init, t_max=4, t_step=2)
    csv = behavior.curve_to_csv(curve, seed=7)
    lines = csv.strip().split("\n")
    assert lines[0] == "rule,width,seed,t,c_bits,u_bits,ratio"
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[:4] == ["30", "9", "7", "2"]
    u = 8 * 10 * 3
    assert first[5] == str(u)
    assert float(first[6]) == pytest.approx(int(first[4]) / u, abs=1e-6)
