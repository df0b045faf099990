"""Compression curves of rule evolutions and behavior-class estimation.

A compression curve samples the compressed size of a rule's space-time
diagram at increasing depths t'.  Class labels are assigned from three
features measured over several random inputs: the terminal compression
ratio, the asymptotic slope of the curve, and the cross-input spread of
terminal compressed sizes.

Classification defaults to the run-length observer.  Under the LZ
observer the long-range window amortizes both homogeneous and periodic
tails to the same token cost, so homogeneous rules are separated from
periodic ones only by their transient, and rule 160's decay transient
consistently costs more than rule 108's quick settle.  Run lengths keep
charging for non-uniform rows forever, which is exactly the distinction
the class-1/class-2 boundary needs, and cross-input spread then splits
periodic rules (attractor depends on the input) from chaotic ones
(statistics wash the input out).
"""

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import compress, eca
from .programmability import fit_line

__all__ = [
    "CompressionCurve",
    "ClassEstimate",
    "compression_curve",
    "compression_ratio",
    "asymptotic_slope",
    "classify_rule",
    "load_thresholds",
    "curve_to_csv",
    "DEFAULT_CLASSIFY_SEED",
]

DEFAULT_CLASSIFY_SEED = 9
DEFAULT_CLASSIFY_COMPRESSOR = "rle"


@dataclass(frozen=True)
class CompressionCurve:
    rule: int
    input: np.ndarray
    points: tuple
    compressor: str

    @property
    def width(self):
        return self.input.shape[0]


@dataclass(frozen=True)
class ClassEstimate:
    rule: int
    label: str
    terminal_ratio: float
    slope_bits_per_step: float
    input_variability: float


def _ascii_u_bits(width, t):
    return 8 * (width + 1) * (t + 1)


def compression_curve(rule, init, t_max, t_step=1, compressor="builtin-lzss"):
    """c_bits of the serialized diagram evolve(rule, init, t') at each
    sampled depth t' in {t_step, 2 t_step, ..., t_max}.

    Evolves once and compresses ascii prefixes; identical to re-evolving
    per point because earlier rows do not depend on later ones.
    """
    if t_step < 1:
        raise ValueError("t_step must be at least 1")
    if t_max < t_step:
        raise ValueError("t_max must be at least t_step")
    if t_max % t_step != 0:
        raise ValueError("t_max must be a multiple of t_step")
    init = np.asarray(init, dtype=np.uint8)
    diag = eca.evolve(rule, init, t_max)
    text = compress.serialize_diagram(diag, "ascii")
    w1 = diag.width + 1
    points = tuple(
        (t, compress.compressed_size_bits(text[: w1 * (t + 1)], compressor))
        for t in range(t_step, t_max + 1, t_step)
    )
    return CompressionCurve(rule=int(rule), input=init, points=points,
                            compressor=compressor)


def compression_ratio(diag, compressor="builtin-lzss"):
    """Compressed bits over uncompressed bits of the ascii serialization.

    May slightly exceed 1 on incompressible diagrams (header overhead).
    """
    text = compress.serialize_diagram(diag, "ascii")
    return compress.compressed_size_bits(text, compressor) / (8 * len(text))


def asymptotic_slope(curve):
    """Least-squares slope (bits/step) over the latter half of the curve.

    Points with t' > t_max/2 are used; when fewer than two such points
    exist the whole curve is fitted.  Raises ValueError on single-point
    curves.
    """
    points = curve.points
    if len(points) < 2:
        raise ValueError("need at least two curve points")
    t_max = points[-1][0]
    tail = [p for p in points if p[0] > t_max / 2]
    if len(tail) < 2:
        tail = list(points)
    slope, _, _ = fit_line(tail)
    return slope


_thresholds_cache = None


def load_thresholds():
    """Frozen classification thresholds shipped with the package."""
    global _thresholds_cache
    if _thresholds_cache is None:
        text = resources.files("progmeter.data").joinpath("class_thresholds.json").read_text()
        _thresholds_cache = json.loads(text)
    return _thresholds_cache


def _label(ratio, variability, th):
    if ratio < th["terminal_ratio_class1_max"]:
        return "class1"
    if ratio >= th["terminal_ratio_class3_min"]:
        return "class3"
    if variability >= th["input_variability_class2_min"]:
        return "class2"
    return "class4"


def classify_rule(rule, width=100, t_max=100, n_inputs=10,
                  seed=DEFAULT_CLASSIFY_SEED,
                  compressor=DEFAULT_CLASSIFY_COMPRESSOR,
                  t_step=None, thresholds=None):
    """Estimate the behavior class of a rule from seeded-random inputs.

    Features: terminal_ratio = mean compression ratio at t_max; slope =
    mean asymptotic slope; input_variability = population std of the
    terminal c_bits across inputs over their mean.  The label is a fixed
    decision tree over (terminal_ratio, input_variability):
    low ratio -> class1, saturated ratio -> class3, and the middle band
    splits on variability (high -> class2, low -> class4).
    """
    if width < 3 or t_max < 1 or n_inputs < 1:
        raise ValueError("parameters must be positive (width at least 3)")
    if t_step is None:
        t_step = max(1, t_max // 10)
    if thresholds is None:
        thresholds = load_thresholds()
    rng = np.random.default_rng(seed)
    inits = (rng.random((n_inputs, width)) < 0.5).astype(np.uint8)
    u_terminal = _ascii_u_bits(width, t_max)
    ratios = np.empty(n_inputs)
    slopes = np.empty(n_inputs)
    terminals = np.empty(n_inputs)
    for j in range(n_inputs):
        curve = compression_curve(rule, inits[j], t_max, t_step, compressor)
        c_terminal = curve.points[-1][1]
        ratios[j] = c_terminal / u_terminal
        slopes[j] = asymptotic_slope(curve) if len(curve.points) > 1 else 0.0
        terminals[j] = c_terminal
    variability = float(terminals.std() / terminals.mean())
    ratio = float(ratios.mean())
    return ClassEstimate(
        rule=int(rule),
        label=_label(ratio, variability, thresholds),
        terminal_ratio=ratio,
        slope_bits_per_step=float(slopes.mean()),
        input_variability=variability,
    )


def curve_to_csv(curve, seed):
    """CSV rows rule,width,seed,t,c_bits,u_bits,ratio for each point."""
    lines = ["rule,width,seed,t,c_bits,u_bits,ratio"]
    width = curve.width
    for t, c in curve.points:
        u = _ascii_u_bits(width, t)
        lines.append("%d,%d,%d,%d,%d,%d,%.6f" % (curve.rule, width, seed, t, c, u, c / u))
    return "\n".join(lines) + "\n"
