"""Input-sensitivity measures over Gray-enumerated configurations.

The central quantity is the normalized difference sum

    d(t') = sum_j |C(M_t'(i_{j+1})) - C(M_t'(i_j))| / (t' * (n - 1))

where i_1..i_n are the first n configurations in binary-reflected Gray
order (consecutive inputs differ in one cell), M_t'(i) is the system's
response to input i over t' updates, and C is the compressed size in
bits.  The programmability coefficient is the least-squares slope of
d(t') against t'.

C is measured on the response rows 1..t' only.  Including row 0 leaks
the single-bit input differences into every measurement: for the null
rule the difference sum then sits at roughly 60-120 bits independent of
t', which alone produces a spurious coefficient near 1e-3.  Excluding
the echoed input makes the null rule exactly zero, which is the
behavior the measure needs as its baseline.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import compress, eca

__all__ = [
    "VariabilitySeries",
    "ProgrammabilityReport",
    "variability_series",
    "fit_line",
    "programmability_coefficient",
    "input_variability",
    "detect_transitions",
]


@dataclass(frozen=True)
class VariabilitySeries:
    rule: int
    width: int
    n: int
    points: tuple


@dataclass(frozen=True)
class ProgrammabilityReport:
    series: VariabilitySeries
    slope: float
    intercept: float
    r_squared: float
    compressor: str

    def to_dict(self):
        pts = self.series.points
        t_step = pts[1][0] - pts[0][0] if len(pts) > 1 else pts[0][0]
        return {
            "rule": self.series.rule,
            "width": self.series.width,
            "n": self.series.n,
            "t_max": pts[-1][0],
            "t_step": t_step,
            "compressor": self.compressor,
            "points": [{"t": t, "d": d} for t, d in pts],
            "slope": self.slope,
            "intercept": self.intercept,
            "r2": self.r_squared,
        }


def _check_grid(t_max, t_step):
    if t_step < 1:
        raise ValueError("t_step must be at least 1")
    if t_max < t_step:
        raise ValueError("t_max must be at least t_step")
    if t_max % t_step != 0:
        raise ValueError("t_max must be a multiple of t_step")
    return list(range(t_step, t_max + 1, t_step))


def _response_bits(rule, inputs, ts, compressor):
    """c_bits of the response rows 1..t for each input and each sampled t.

    Evolves each input once to max(ts) and compresses text prefixes,
    which by construction equals re-evolving to each t.
    """
    t_max = ts[-1]
    width = inputs.shape[1]
    w1 = width + 1
    out = np.empty((inputs.shape[0], len(ts)), dtype=np.int64)
    for j in range(inputs.shape[0]):
        diag = eca.evolve(rule, inputs[j], t_max)
        text = compress.serialize_diagram(diag, "ascii")
        for k, t in enumerate(ts):
            out[j, k] = compress.compressed_size_bits(text[w1 : w1 * (t + 1)], compressor)
    return out


def variability_series(rule, width, n, t_max, t_step=1, compressor="builtin-lzss"):
    """Normalized difference sums d(t') over the first n Gray inputs."""
    if n < 2:
        raise ValueError("need at least two inputs to form differences")
    ts = _check_grid(t_max, t_step)
    inputs = eca.gray_inputs(n, width)
    bits = _response_bits(rule, inputs, ts, compressor)
    diffs = np.abs(np.diff(bits, axis=0)).sum(axis=0)
    points = tuple(
        (t, int(diffs[k]) / (t * (n - 1))) for k, t in enumerate(ts)
    )
    return VariabilitySeries(rule=int(rule), width=width, n=n, points=points)


def fit_line(points):
    """Ordinary least squares fit y = slope*x + intercept.

    Returns (slope, intercept, r_squared); r_squared is 1.0 when the
    residuals vanish.  Raises ValueError when fewer than 2 points or all
    x coincide.
    """
    pts = list(points)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    x = np.array([p[0] for p in pts], dtype=np.float64)
    y = np.array([p[1] for p in pts], dtype=np.float64)
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise ValueError("all x values coincide")
    slope = float(dx @ (y - y.mean())) / sxx
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (slope * x + intercept)
    ss_res = float(resid @ resid)
    dy = y - y.mean()
    ss_tot = float(dy @ dy)
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res < 1e-12 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return slope, intercept, r2


def programmability_coefficient(rule, width=12, n=16, t_max=200, t_step=20,
                                compressor="builtin-lzss"):
    """Fit d(t') against t'; the slope is the programmability coefficient."""
    series = variability_series(rule, width, n, t_max, t_step, compressor)
    slope, intercept, r2 = fit_line(series.points)
    return ProgrammabilityReport(
        series=series, slope=slope, intercept=intercept, r_squared=r2,
        compressor=compressor,
    )


def input_variability(rule, width, n, t, compressor="builtin-lzss"):
    """Normalized spread (population std / mean) of response c_bits at time t."""
    if n < 2:
        raise ValueError("need at least two inputs")
    inputs = eca.gray_inputs(n, width)
    bits = _response_bits(rule, inputs, [t], compressor)[:, 0].astype(np.float64)
    return float(bits.std() / bits.mean())


def detect_transitions(lengths, z):
    """Indices j where |lengths[j+1] - lengths[j]| exceeds z standard
    deviations of all consecutive absolute differences.

    Population standard deviation; a degenerate (zero) deviation yields
    no transitions.
    """
    vals = [int(v) for v in lengths]
    if len(vals) < 3:
        raise ValueError("need at least three values")
    if not z > 0:
        raise ValueError("z must be positive")
    diffs = np.abs(np.diff(np.array(vals, dtype=np.float64)))
    sigma = float(diffs.std())
    if sigma == 0.0 or math.isnan(sigma):
        return []
    return [int(j) for j in np.flatnonzero(diffs > z * sigma)]
