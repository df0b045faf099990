"""Pure numpy/Python kernel backend.

Reference implementations of the hot loops.  The numba backend in
``_numba.py`` mirrors these exactly; both must produce bit-identical
output for any input.  This path is selected when numba is missing or
``PROGMETER_NO_NUMBA`` is set.
"""

import numpy as np

from .params import (
    HASH_MASK,
    MAX_CHAIN,
    MAX_MATCH,
    MIN_MATCH,
    RLE_MAX_RUN,
    WINDOW,
    WINDOW_MASK,
)

__all__ = ["eca_evolve", "lzss_encode", "lzss_decode", "rle_encode", "rle_decode"]


def eca_evolve(table, init, steps):
    """Evolve a cyclic elementary CA for `steps` updates.

    table : (8,) uint8 rule table indexed by 4*left + 2*center + right
    init  : (width,) uint8 row of 0/1 cells
    Returns the (steps + 1, width) uint8 space-time array, row 0 = init.
    """
    width = init.shape[0]
    out = np.empty((steps + 1, width), dtype=np.uint8)
    out[0] = init
    row = out[0]
    for t in range(steps):
        idx = (np.roll(row, 1) << 2) | (row << 1) | np.roll(row, -1)
        row = table[idx]
        out[t + 1] = row
    return out


def _hash3(b0, b1, b2):
    return ((b0 << 10) ^ (b1 << 5) ^ b2) & HASH_MASK


def lzss_encode(data):
    """Encode a uint8 array into an LZSS token stream (uint8 array).

    Tokens are MSB-first bit-packed: flag 0 + 8-bit literal, or flag 1 +
    15-bit (offset - 1) + 8-bit (length - MIN_MATCH).  Matching is greedy
    longest-match over a hash chain walked most-recent-first, capped at
    MAX_CHAIN candidates; ties keep the nearest offset.
    """
    buf = data.tobytes()
    n = len(buf)
    head = [-1] * (HASH_MASK + 1)
    prev = [-1] * WINDOW
    out = bytearray()
    bitbuf = 0
    bitcnt = 0
    pos = 0
    while pos < n:
        best_len = 0
        best_off = 0
        if pos + MIN_MATCH <= n:
            h = _hash3(buf[pos], buf[pos + 1], buf[pos + 2])
            cand = head[h]
            limit = pos - WINDOW
            max_len = MAX_MATCH if n - pos > MAX_MATCH else n - pos
            chain = 0
            while cand >= 0 and cand >= limit and chain < MAX_CHAIN:
                chain += 1
                if buf[cand + best_len] == buf[pos + best_len]:
                    ln = 0
                    while (
                        ln + 8 <= max_len
                        and buf[cand + ln : cand + ln + 8] == buf[pos + ln : pos + ln + 8]
                    ):
                        ln += 8
                    while ln < max_len and buf[cand + ln] == buf[pos + ln]:
                        ln += 1
                    if ln > best_len:
                        best_len = ln
                        best_off = pos - cand
                        if best_len >= max_len:
                            break
                cand = prev[cand & WINDOW_MASK]
        if best_len >= MIN_MATCH:
            bitbuf = (bitbuf << 24) | (1 << 23) | ((best_off - 1) << 8) | (best_len - MIN_MATCH)
            bitcnt += 24
            end = pos + best_len
            while pos < end:
                if pos + MIN_MATCH <= n:
                    h = _hash3(buf[pos], buf[pos + 1], buf[pos + 2])
                    prev[pos & WINDOW_MASK] = head[h]
                    head[h] = pos
                pos += 1
        else:
            bitbuf = (bitbuf << 9) | buf[pos]
            bitcnt += 9
            if pos + MIN_MATCH <= n:
                h = _hash3(buf[pos], buf[pos + 1], buf[pos + 2])
                prev[pos & WINDOW_MASK] = head[h]
                head[h] = pos
            pos += 1
        while bitcnt >= 8:
            bitcnt -= 8
            out.append((bitbuf >> bitcnt) & 0xFF)
        bitbuf &= (1 << bitcnt) - 1
    if bitcnt:
        out.append((bitbuf << (8 - bitcnt)) & 0xFF)
    return np.frombuffer(bytes(out), dtype=np.uint8)


def _read_bits(buf, bitpos, nbits):
    first = bitpos >> 3
    last = (bitpos + nbits - 1) >> 3
    acc = int.from_bytes(buf[first : last + 1], "big")
    total = (last + 1 - first) * 8
    skip = bitpos - first * 8
    return (acc >> (total - skip - nbits)) & ((1 << nbits) - 1)


def lzss_decode(tokens, out_len):
    """Decode an LZSS token stream back to `out_len` bytes.

    Returns (uint8 array, bits consumed).  Raises ValueError on any
    malformed stream: truncation, out-of-range offsets, or output overrun.
    """
    buf = tokens.tobytes()
    nbits = len(buf) * 8
    out = bytearray(out_len)
    opos = 0
    bitpos = 0
    while opos < out_len:
        if bitpos + 1 > nbits:
            raise ValueError("truncated stream")
        flag = (buf[bitpos >> 3] >> (7 - (bitpos & 7))) & 1
        bitpos += 1
        if flag == 0:
            if bitpos + 8 > nbits:
                raise ValueError("truncated stream")
            out[opos] = _read_bits(buf, bitpos, 8)
            bitpos += 8
            opos += 1
        else:
            if bitpos + 23 > nbits:
                raise ValueError("truncated stream")
            off = _read_bits(buf, bitpos, 15) + 1
            ln = _read_bits(buf, bitpos + 15, 8) + MIN_MATCH
            bitpos += 23
            if off > opos:
                raise ValueError("invalid match offset")
            if opos + ln > out_len:
                raise ValueError("output overrun")
            src = opos - off
            for k in range(ln):
                out[opos + k] = out[src + k]
            opos += ln
    return np.frombuffer(bytes(out), dtype=np.uint8), bitpos


def rle_encode(data):
    """Encode a uint8 array as (count, value) byte pairs, count in 1..255.

    Runs longer than 255 split into maximal chunks left to right.
    """
    n = data.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.uint8)
    buf = data.tobytes()
    change = np.flatnonzero(data[1:] != data[:-1])
    starts = np.concatenate(([0], change + 1))
    ends = np.concatenate((change + 1, [n]))
    out = bytearray()
    for s, e in zip(starts.tolist(), ends.tolist()):
        run = e - s
        v = buf[s]
        while run > RLE_MAX_RUN:
            out.append(RLE_MAX_RUN)
            out.append(v)
            run -= RLE_MAX_RUN
        out.append(run)
        out.append(v)
    return np.frombuffer(bytes(out), dtype=np.uint8)


def rle_decode(tokens, out_len):
    """Decode (count, value) pairs; total must equal out_len exactly."""
    if tokens.shape[0] % 2 != 0:
        raise ValueError("truncated stream")
    counts = tokens[0::2].astype(np.int64)
    if counts.shape[0] and int(counts.min()) == 0:
        raise ValueError("invalid run length")
    if int(counts.sum()) != out_len:
        raise ValueError("length mismatch")
    return np.repeat(tokens[1::2], counts)
