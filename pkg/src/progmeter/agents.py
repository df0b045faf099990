"""Stimulus-driven agents, phase-space projection, and the
variability-controllability classification.

Agents live in a spherical work envelope whose radius is the sum of
their arm segment lengths.  Positions are quantized: the envelope radius
maps to 1000 integer units and each axis is clipped to +/-577 (the cube
inscribed in the radius-1000 ball), so every position satisfies
|p| <= 1000 exactly and repeated states serialize to identical bytes.
All dynamics are integer-valued, which keeps trajectories bit-identical
across platforms.

Three reference kinds:
  periodic  cycles a seeded set of poses, ignoring stimuli;
  random    integrates seeded noise, but only while stimulated (a
            Brownian wanderer that freezes in a silent environment);
  reactive  integrates gain * stimulus - the agent that does what the
            input asks.

Variability is the spread of compressed phase-space sizes across a
constant, a periodic, and a random stimulus stream.  Controllability
compares the path the stimuli prescribe (their unit-gain integral,
rendered in the canonical serialization) against the path the agent
actually took, via normalized compression distance.  Raw stimulus
vectors share no byte structure with integrated positions, so the
prescribed-path rendering is what makes the NCD comparison meaningful.
"""

from dataclasses import dataclass, field

import numpy as np

from . import compress
from .lattice import Lattice, bdm

__all__ = [
    "AgentSpec",
    "StimulusStream",
    "Trajectory",
    "PhaseSpaceSeries",
    "BehaviorAssessment",
    "COORD_BOUND",
    "ENVELOPE_RADIUS",
    "stimulus_stream",
    "entropy_ladder",
    "simulate_agent",
    "prescribed_trajectory",
    "project",
    "phase_to_bytes",
    "rasterize",
    "behavioral_complexity",
    "ncd",
    "assess",
    "environment_sweep",
    "trajectory_to_csv",
]

ENVELOPE_RADIUS = 1000
COORD_BOUND = 577
STIMULUS_MAX = 4
NOISE_AMPLITUDE = 50
DEFAULT_SEGMENTS = (5.0, 3.0, 2.0)

VARIABILITY_FLOOR = 0.15
CONTROLLABILITY_FLOOR = 0.5
DIAGONAL_BAND = 0.35

_KINDS = ("periodic", "random", "reactive")
_STREAM_KINDS = ("constant", "periodic", "random")


@dataclass(frozen=True)
class AgentSpec:
    kind: str
    period: int = 8
    seed: int = 7
    gain: int = 1
    segments: tuple = DEFAULT_SEGMENTS

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError("unknown agent kind %r" % (self.kind,))
        if self.period < 1 or self.gain < 1 or self.seed < 0:
            raise ValueError("agent parameters must be positive")
        if not self.segments or any(s <= 0 for s in self.segments):
            raise ValueError("segment lengths must be positive")


@dataclass(frozen=True)
class StimulusStream:
    kind: str
    seed: int
    period: int
    values: np.ndarray


@dataclass(frozen=True)
class Trajectory:
    positions: np.ndarray
    stimuli: StimulusStream

    @property
    def steps(self):
        return self.positions.shape[0]


@dataclass(frozen=True)
class PhaseSpaceSeries:
    points: np.ndarray


@dataclass(frozen=True)
class BehaviorAssessment:
    variability: float
    controllability: float
    label: str
    per_stream_c_bits: dict


def stimulus_stream(kind, length, seed, period=8):
    """Deterministic stream of 3-vector stimuli with entries in [-4, 4].

    constant: all-zero vectors (the silent environment);
    periodic: an antisymmetric seeded pattern of the given even period,
              tiled (zero net drift over each cycle);
    random:   fresh seeded draws every step.
    """
    if kind not in _STREAM_KINDS:
        raise ValueError("unknown stimulus kind %r" % (kind,))
    if length < 1:
        raise ValueError("length must be positive")
    if kind == "constant":
        values = np.zeros((length, 3), dtype=np.int64)
    elif kind == "periodic":
        if period < 2 or period % 2 != 0:
            raise ValueError("period must be even and at least 2")
        rng = np.random.default_rng(seed)
        base = rng.integers(-STIMULUS_MAX, STIMULUS_MAX + 1, (period // 2, 3))
        pattern = np.concatenate([base, -base]).astype(np.int64)
        reps = -(-length // period)
        values = np.tile(pattern, (reps, 1))[:length]
    else:
        rng = np.random.default_rng(seed)
        values = rng.integers(-STIMULUS_MAX, STIMULUS_MAX + 1, (length, 3)).astype(np.int64)
    return StimulusStream(kind=kind, seed=int(seed), period=int(period), values=values)


def entropy_ladder(length, seed):
    """Five streams ordered by stimulus entropy: constant, periodic with
    growing period, then random."""
    return [
        stimulus_stream("constant", length, seed),
        stimulus_stream("periodic", length, seed, period=2),
        stimulus_stream("periodic", length, seed, period=4),
        stimulus_stream("periodic", length, seed, period=8),
        stimulus_stream("random", length, seed),
    ]


def _integrate(deltas):
    """Cumulative sum with per-axis clipping to the envelope cube."""
    out = np.empty_like(deltas)
    pos = np.zeros(3, dtype=np.int64)
    for k in range(deltas.shape[0]):
        pos = np.clip(pos + deltas[k], -COORD_BOUND, COORD_BOUND)
        out[k] = pos
    return out


def simulate_agent(spec, stimuli, steps):
    """Run an agent for `steps` updates under a stimulus stream."""
    if steps < 1:
        raise ValueError("steps must be positive")
    if stimuli.values.shape[0] < steps:
        raise ValueError("stimulus stream shorter than requested steps")
    s = stimuli.values[:steps]
    if spec.kind == "periodic":
        rng = np.random.default_rng(spec.seed)
        poses = rng.integers(-COORD_BOUND, COORD_BOUND + 1, (spec.period, 3)).astype(np.int64)
        positions = poses[np.arange(steps) % spec.period]
    elif spec.kind == "random":
        rng = np.random.default_rng((spec.seed, stimuli.seed))
        noise = rng.integers(-NOISE_AMPLITUDE, NOISE_AMPLITUDE + 1, (steps, 3)).astype(np.int64)
        active = (np.abs(s).sum(axis=1) > 0).astype(np.int64)
        positions = _integrate(noise * active[:, None])
    else:
        positions = _integrate(spec.gain * s)
    return Trajectory(positions=positions, stimuli=stimuli)


def prescribed_trajectory(stimuli, steps):
    """The path the stimuli prescribe: their unit-gain integral inside
    the same envelope."""
    if stimuli.values.shape[0] < steps:
        raise ValueError("stimulus stream shorter than requested steps")
    positions = _integrate(stimuli.values[:steps])
    return Trajectory(positions=positions, stimuli=stimuli)


def project(traj):
    """Per-step 6-tuples: the XY, XZ and YZ plane projections."""
    p = traj.positions
    points = np.column_stack([p[:, 0], p[:, 1], p[:, 0], p[:, 2], p[:, 1], p[:, 2]])
    return PhaseSpaceSeries(points=points)


def phase_to_bytes(series):
    """Canonical serialization: six comma-separated decimal coordinates
    per line."""
    lines = [",".join(str(v) for v in row) for row in series.points.tolist()]
    return ("\n".join(lines) + "\n").encode("ascii")


def rasterize(series, grid=30):
    """Mark visited cells of each plane on a grid x grid lattice.

    Coordinates are scaled by integer affine maps of each axis's
    bounding range; a degenerate axis collapses onto column/row 0.
    Returns the (XY, XZ, YZ) lattices.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    pts = series.points
    lattices = []
    for a, b in ((0, 1), (2, 3), (4, 5)):
        xs, ys = pts[:, a], pts[:, b]
        col = (xs - xs.min()) * grid // (xs.max() - xs.min() + 1)
        row = (ys - ys.min()) * grid // (ys.max() - ys.min() + 1)
        cells = np.zeros((grid, grid), dtype=np.uint8)
        cells[row, col] = 1
        lattices.append(Lattice(cells=cells))
    return tuple(lattices)


def behavioral_complexity(traj, compressor="builtin-lzss", table=None, grid=30):
    """(c_bits, bdm3): compressed size of the canonical phase-space
    serialization, and the summed block-decomposition complexity of the
    three rasterized planes (None when no coding table is supplied)."""
    series = project(traj)
    c_bits = compress.compressed_size_bits(phase_to_bytes(series), compressor)
    if table is None:
        return c_bits, None
    bdm3 = sum(bdm(lat, table, compressor).value for lat in rasterize(series, grid))
    return c_bits, bdm3


def ncd(a, b, compressor="builtin-lzss"):
    """Normalized compression distance between two byte sequences."""
    if not a or not b:
        raise ValueError("inputs must be nonempty")
    ca = compress.compressed_size_bits(a, compressor)
    cb = compress.compressed_size_bits(b, compressor)
    cab = compress.compressed_size_bits(a + b, compressor)
    return (cab - min(ca, cb)) / max(ca, cb)


def _label(variability, controllability):
    if variability < VARIABILITY_FLOOR:
        return "enveloped" if controllability >= CONTROLLABILITY_FLOOR else "inert"
    if controllability < CONTROLLABILITY_FLOOR:
        return "random-uncontrollable"
    if abs(variability - controllability) < DIAGONAL_BAND:
        return "programmable"
    return "random-uncontrollable"


def assess(spec, steps=1000, seeds=(101, 102, 103), compressor="builtin-lzss"):
    """Score an agent on the variability-controllability plane.

    The agent runs under three streams (constant, periodic, random,
    seeded by the given triple).  Variability is the min-max spread of
    the three compressed phase-space sizes; controllability is one minus
    the clamped NCD between the random stream's prescribed path and the
    agent's actual path under it.
    """
    streams = {
        "constant": stimulus_stream("constant", steps, seeds[0]),
        "periodic": stimulus_stream("periodic", steps, seeds[1]),
        "random": stimulus_stream("random", steps, seeds[2]),
    }
    c_bits = {}
    movement = {}
    for name, stream in streams.items():
        traj = simulate_agent(spec, stream, steps)
        movement[name] = phase_to_bytes(project(traj))
        c_bits[name] = compress.compressed_size_bits(movement[name], compressor)
    values = list(c_bits.values())
    variability = (max(values) - min(values)) / max(values)
    prescribed = phase_to_bytes(project(prescribed_trajectory(streams["random"], steps)))
    distance = ncd(prescribed, movement["random"], compressor)
    controllability = 1.0 - min(1.0, max(0.0, distance))
    return BehaviorAssessment(
        variability=float(variability),
        controllability=float(controllability),
        label=_label(variability, controllability),
        per_stream_c_bits=c_bits,
    )


def environment_sweep(spec, environments, steps):
    """Behavioral c_bits of one agent across entropy-ordered environments."""
    out = []
    for stream in environments:
        traj = simulate_agent(spec, stream, steps)
        out.append(compress.compressed_size_bits(phase_to_bytes(project(traj))))
    return out


def trajectory_to_csv(traj):
    """CSV rows step,x,y,z,s1,s2,s3."""
    lines = ["step,x,y,z,s1,s2,s3"]
    s = traj.stimuli.values
    for k, (x, y, z) in enumerate(traj.positions.tolist()):
        lines.append("%d,%d,%d,%d,%d,%d,%d" % (k, x, y, z, s[k][0], s[k][1], s[k][2]))
    return "\n".join(lines) + "\n"
