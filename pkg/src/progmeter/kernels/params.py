"""Shared constants for the compression and evolution kernels.

Both kernel backends (numba and numpy) read these at import time, so the
two implementations are guaranteed to agree on the stream geometry.
"""

# LZSS stream geometry.  A match token is 1 flag bit + 15 offset bits +
# 8 length bits; a literal token is 1 flag bit + 8 data bits.
WINDOW = 32768
MIN_MATCH = 3
MAX_MATCH = 258
OFFSET_BITS = 15
LENGTH_BITS = 8
LITERAL_BITS = 8

# Match-finder tuning.  The hash chain is walked most-recent-first and
# abandoned after MAX_CHAIN candidates; this caps worst-case cost on
# low-entropy input without affecting determinism (both backends apply
# the identical cap).
HASH_BITS = 15
HASH_SIZE = 1 << HASH_BITS
HASH_MASK = HASH_SIZE - 1
WINDOW_MASK = WINDOW - 1
MAX_CHAIN = 128

# Run-length encoding: (count, value) byte pairs, count in 1..255.
RLE_MAX_RUN = 255
