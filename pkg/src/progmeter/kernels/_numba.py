"""Numba-accelerated kernel backend.

Mirrors ``_numpy.py`` token for token: the two backends must emit
bit-identical streams and identical space-time arrays.  Any change to
the matching or packing logic has to land in both files.
"""

import numpy as np
from numba import njit

from .params import (
    HASH_MASK,
    HASH_SIZE,
    MAX_CHAIN,
    MAX_MATCH,
    MIN_MATCH,
    RLE_MAX_RUN,
    WINDOW,
    WINDOW_MASK,
)

__all__ = ["eca_evolve", "lzss_encode", "lzss_decode", "rle_encode", "rle_decode"]


@njit(cache=True)
def eca_evolve(table, init, steps):
    width = init.shape[0]
    out = np.empty((steps + 1, width), dtype=np.uint8)
    for j in range(width):
        out[0, j] = init[j]
    for t in range(steps):
        row = out[t]
        left = row[width - 1]
        for j in range(width):
            c = row[j]
            r = row[j + 1] if j + 1 < width else row[0]
            out[t + 1, j] = table[(left << 2) | (c << 1) | r]
            left = c
    return out


@njit(cache=True)
def lzss_encode(data):
    n = data.shape[0]
    head = np.full(HASH_SIZE, -1, dtype=np.int64)
    prev = np.full(WINDOW, -1, dtype=np.int64)
    cap = 2 + (9 * n + 7) // 8
    out = np.empty(cap, dtype=np.uint8)
    opos = 0
    bitbuf = 0
    bitcnt = 0
    pos = 0
    while pos < n:
        best_len = 0
        best_off = 0
        if pos + MIN_MATCH <= n:
            h = ((int(data[pos]) << 10) ^ (int(data[pos + 1]) << 5) ^ int(data[pos + 2])) & HASH_MASK
            cand = head[h]
            limit = pos - WINDOW
            max_len = MAX_MATCH if n - pos > MAX_MATCH else n - pos
            chain = 0
            while cand >= 0 and cand >= limit and chain < MAX_CHAIN:
                chain += 1
                if data[cand + best_len] == data[pos + best_len]:
                    ln = 0
                    while ln < max_len and data[cand + ln] == data[pos + ln]:
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
                    h = ((int(data[pos]) << 10) ^ (int(data[pos + 1]) << 5) ^ int(data[pos + 2])) & HASH_MASK
                    prev[pos & WINDOW_MASK] = head[h]
                    head[h] = pos
                pos += 1
        else:
            bitbuf = (bitbuf << 9) | int(data[pos])
            bitcnt += 9
            if pos + MIN_MATCH <= n:
                h = ((int(data[pos]) << 10) ^ (int(data[pos + 1]) << 5) ^ int(data[pos + 2])) & HASH_MASK
                prev[pos & WINDOW_MASK] = head[h]
                head[h] = pos
            pos += 1
        while bitcnt >= 8:
            bitcnt -= 8
            out[opos] = (bitbuf >> bitcnt) & 0xFF
            opos += 1
        bitbuf &= (1 << bitcnt) - 1
    if bitcnt > 0:
        out[opos] = (bitbuf << (8 - bitcnt)) & 0xFF
        opos += 1
    return out[:opos].copy()


@njit(cache=True)
def _read_bits(buf, bitpos, nbits):
    v = 0
    p = bitpos
    for _ in range(nbits):
        v = (v << 1) | ((int(buf[p >> 3]) >> (7 - (p & 7))) & 1)
        p += 1
    return v


@njit(cache=True)
def lzss_decode(tokens, out_len):
    nbits = tokens.shape[0] * 8
    out = np.empty(out_len, dtype=np.uint8)
    opos = 0
    bitpos = 0
    while opos < out_len:
        if bitpos + 1 > nbits:
            raise ValueError("truncated stream")
        flag = (int(tokens[bitpos >> 3]) >> (7 - (bitpos & 7))) & 1
        bitpos += 1
        if flag == 0:
            if bitpos + 8 > nbits:
                raise ValueError("truncated stream")
            out[opos] = _read_bits(tokens, bitpos, 8)
            bitpos += 8
            opos += 1
        else:
            if bitpos + 23 > nbits:
                raise ValueError("truncated stream")
            off = _read_bits(tokens, bitpos, 15) + 1
            ln = _read_bits(tokens, bitpos + 15, 8) + MIN_MATCH
            bitpos += 23
            if off > opos:
                raise ValueError("invalid match offset")
            if opos + ln > out_len:
                raise ValueError("output overrun")
            src = opos - off
            for k in range(ln):
                out[opos + k] = out[src + k]
            opos += ln
    return out, bitpos


@njit(cache=True)
def rle_encode(data):
    n = data.shape[0]
    out = np.empty(2 * n, dtype=np.uint8)
    opos = 0
    i = 0
    while i < n:
        v = data[i]
        run = 1
        while i + run < n and data[i + run] == v and run < RLE_MAX_RUN:
            run += 1
        out[opos] = run
        out[opos + 1] = v
        opos += 2
        i += run
    return out[:opos].copy()


@njit(cache=True)
def rle_decode(tokens, out_len):
    if tokens.shape[0] % 2 != 0:
        raise ValueError("truncated stream")
    total = 0
    for i in range(0, tokens.shape[0], 2):
        c = int(tokens[i])
        if c == 0:
            raise ValueError("invalid run length")
        total += c
    if total != out_len:
        raise ValueError("length mismatch")
    out = np.empty(out_len, dtype=np.uint8)
    opos = 0
    for i in range(0, tokens.shape[0], 2):
        c = int(tokens[i])
        v = tokens[i + 1]
        for _ in range(c):
            out[opos] = v
            opos += 1
    return out
