"""Elementary cellular automata on a cyclic lattice.

Rules follow the standard numbering: the next state of a cell with
neighborhood (l, c, r) is bit 4*l + 2*c + r of the rule byte.  Updates
are synchronous and the boundary wraps.  A space-time diagram collects
the initial row plus one row per update.

Two interchange formats are provided: an ascii text form (rows of
'0'/'1', one per line, trailing newline) and a packed binary form
(8-byte header of width and steps as little-endian u32, then row-major
MSB-first packed bits).
"""

import struct
from dataclasses import dataclass

import numpy as np

from . import kernels

__all__ = [
    "SpaceTimeDiagram",
    "rule_table",
    "step",
    "evolve",
    "random_config",
    "single_cell_config",
    "gray_code",
    "gray_inputs",
    "cells_to_text",
    "text_to_cells",
    "diagram_to_text",
    "diagram_to_bytes",
    "bytes_to_cells",
]


def _check_rule(rule):
    if not isinstance(rule, (int, np.integer)) or isinstance(rule, bool):
        raise ValueError("rule must be an integer in 0..255")
    if not 0 <= rule <= 255:
        raise ValueError("rule must be an integer in 0..255")
    return int(rule)


def _check_row(row):
    arr = np.asarray(row, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError("configuration must be one-dimensional")
    if arr.shape[0] < 3:
        raise ValueError("width must be at least 3")
    if arr.max(initial=0) > 1:
        raise ValueError("cells must be 0 or 1")
    return arr


@dataclass(frozen=True)
class SpaceTimeDiagram:
    """Space-time history of a rule: row 0 is the initial configuration."""

    rule: int
    cells: np.ndarray

    @property
    def width(self):
        return self.cells.shape[1]

    @property
    def steps(self):
        return self.cells.shape[0] - 1

    def validate(self):
        """Check that every row follows from the previous one under `rule`."""
        table = rule_table(self.rule)
        for t in range(self.steps):
            row = self.cells[t]
            idx = (np.roll(row, 1) << 2) | (row << 1) | np.roll(row, -1)
            if not np.array_equal(table[idx], self.cells[t + 1]):
                raise ValueError("row %d does not follow from its predecessor" % (t + 1))


def rule_table(rule):
    """Return the 8-entry lookup table for a rule, indexed by 4*l + 2*c + r."""
    rule = _check_rule(rule)
    return np.unpackbits(np.array([rule], dtype=np.uint8), bitorder="little")


def step(row, rule):
    """Apply one synchronous update on the cyclic lattice."""
    arr = _check_row(row)
    table = rule_table(rule)
    idx = (np.roll(arr, 1) << 2) | (arr << 1) | np.roll(arr, -1)
    return table[idx]


def evolve(rule, init, steps):
    """Run `steps` updates and return the full space-time diagram."""
    table = rule_table(rule)
    arr = _check_row(init)
    if steps < 0:
        raise ValueError("steps must be non-negative")
    cells = kernels.eca_evolve(table, np.ascontiguousarray(arr), int(steps))
    return SpaceTimeDiagram(rule=int(rule), cells=cells)


def random_config(width, seed, density=0.5):
    """Random 0/1 row: cell j is 1 with probability `density`."""
    if width < 3:
        raise ValueError("width must be at least 3")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    return (rng.random(width) < density).astype(np.uint8)


def single_cell_config(width):
    """All-zero row with a single 1 at the center cell width // 2."""
    if width < 3:
        raise ValueError("width must be at least 3")
    row = np.zeros(width, dtype=np.uint8)
    row[width // 2] = 1
    return row


def gray_code(k):
    """k-th binary-reflected Gray code."""
    if k < 0:
        raise ValueError("index must be non-negative")
    return k ^ (k >> 1)


def gray_inputs(count, width):
    """First `count` configurations of the Gray enumeration of a width-bit row.

    Row k is gray_code(k) written in width binary digits, most significant
    digit leftmost.  Consecutive rows differ in exactly one cell.
    """
    if width < 3:
        raise ValueError("width must be at least 3")
    if count < 1:
        raise ValueError("count must be positive")
    if count > (1 << width):
        raise ValueError("count exceeds the number of distinct configurations")
    out = np.zeros((count, width), dtype=np.uint8)
    for k in range(count):
        g = gray_code(k)
        j = width - 1
        while g and j >= 0:
            out[k, j] = g & 1
            g >>= 1
            j -= 1
        if g:
            raise ValueError("configuration does not fit in width cells")
    return out


def cells_to_text(cells):
    """Render a 0/1 matrix as lines of '0'/'1' characters, one row per line."""
    rows, width = cells.shape
    buf = np.empty((rows, width + 1), dtype=np.uint8)
    buf[:, :width] = cells + 48
    buf[:, width] = 10
    return buf.tobytes().decode("ascii")


def text_to_cells(text):
    """Parse the text form back into a uint8 matrix.

    Rows must be equal length and contain only '0' and '1'; anything
    else raises ValueError.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("empty diagram")
    width = len(lines[0])
    if width == 0 or any(len(ln) != width for ln in lines):
        raise ValueError("ragged or empty rows")
    flat = np.frombuffer("".join(lines).encode("ascii"), dtype=np.uint8)
    if np.any((flat != 48) & (flat != 49)):
        raise ValueError("invalid character in diagram")
    return (flat - 48).reshape(len(lines), width)


def diagram_to_text(diag):
    return cells_to_text(diag.cells)


def diagram_to_bytes(diag):
    """Packed binary form: '<II' (width, steps) header then MSB-first bits."""
    cells = diag.cells
    header = struct.pack("<II", cells.shape[1], cells.shape[0] - 1)
    body = np.packbits(cells.ravel(), bitorder="big").tobytes()
    return header + body


def bytes_to_cells(data):
    """Parse the packed binary form; strict about length and padding."""
    if len(data) < 8:
        raise ValueError("truncated header")
    width, steps = struct.unpack("<II", data[:8])
    if width == 0:
        raise ValueError("zero width")
    total = (steps + 1) * width
    nbytes = (total + 7) // 8
    if len(data) != 8 + nbytes:
        raise ValueError("body length mismatch")
    bits = np.unpackbits(np.frombuffer(data[8:], dtype=np.uint8), bitorder="big")
    if np.any(bits[total:]):
        raise ValueError("nonzero padding bits")
    return bits[:total].reshape(steps + 1, width)
