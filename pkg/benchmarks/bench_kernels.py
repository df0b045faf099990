#!/usr/bin/env python3
"""Benchmark the jit kernels against the pure-numpy reference backend.

Runs the three hot kernels (lzss encode, rle encode, rule evolution) on
identical inputs through both implementations and prints a timing table.
The jit path is what `import progmeter` normally dispatches to; the
reference path is what you get under PROGMETER_NO_NUMBA=1.

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--size BYTES]
"""

import argparse
import time

import numpy as np

from progmeter.kernels import _numpy as ref


def _load_jit():
    try:
        from progmeter.kernels import _numba as jit
    except ImportError:
        return None
    return jit


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _inputs(size):
    rng = np.random.default_rng(7)
    text = (rng.random(size) < 0.4).astype(np.uint8) + 48
    mixed = rng.integers(0, 256, size).astype(np.uint8)
    mixed[size // 3 : 2 * size // 3] = 0
    table = np.unpackbits(np.array([110], dtype=np.uint8), bitorder="little")
    init = (rng.random(400) < 0.5).astype(np.uint8)
    return {
        "lzss_encode/binary-text": ("lzss_encode", (text,)),
        "lzss_encode/mixed": ("lzss_encode", (mixed,)),
        "rle_encode/binary-text": ("rle_encode", (text,)),
        "eca_evolve/400x600": ("eca_evolve", (table, init, 600)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--size", type=int, default=262_144)
    args = ap.parse_args()

    jit = _load_jit()
    if jit is None:
        print("numba unavailable; nothing to compare")
        return 1

    cases = _inputs(args.size)
    # warm the jit compilation cache outside the timed region
    for name, (fn, fargs) in cases.items():
        getattr(jit, fn)(*fargs)

    print("input size %d bytes, best of %d runs" % (args.size, args.repeats))
    print("%-28s %12s %12s %9s" % ("kernel", "numpy (ms)", "numba (ms)", "speedup"))
    for name, (fn, fargs) in cases.items():
        t_ref = _time(lambda: getattr(ref, fn)(*fargs), args.repeats)
        t_jit = _time(lambda: getattr(jit, fn)(*fargs), args.repeats)
        print("%-28s %12.2f %12.2f %8.1fx"
              % (name, 1e3 * t_ref, 1e3 * t_jit, t_ref / t_jit))

    # sanity: identical streams
    for name, (fn, fargs) in cases.items():
        assert np.array_equal(getattr(ref, fn)(*fargs), getattr(jit, fn)(*fargs)), name
    print("outputs bit-identical across backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
