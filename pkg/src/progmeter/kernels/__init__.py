"""Kernel backend selection.

The numba backend is used when importable; setting the environment
variable ``PROGMETER_NO_NUMBA`` to anything but ``0`` forces the pure
numpy/Python fallback.  ``BACKEND`` records which one is active.  Both
backends are contractually bit-identical (see tests/test_kernels.py),
so the flag only changes speed, never results.
"""

import os
import warnings

_flag = os.environ.get("PROGMETER_NO_NUMBA", "")
if _flag not in ("", "0"):
    from . import _numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _numba as _impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on environment
        warnings.warn("numba unavailable, using pure numpy kernels", stacklevel=1)
        from . import _numpy as _impl

        BACKEND = "numpy"

eca_evolve = _impl.eca_evolve
lzss_encode = _impl.lzss_encode
lzss_decode = _impl.lzss_decode
rle_encode = _impl.rle_encode
rle_decode = _impl.rle_decode

__all__ = [
    "BACKEND",
    "eca_evolve",
    "lzss_encode",
    "lzss_decode",
    "rle_encode",
    "rle_decode",
]
