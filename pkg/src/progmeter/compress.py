"""Lossless compression observers and the container stream format.

Complexity is always measured through a named compressor; the measured
quantity is the size in bits of the full output stream, header included,
so that empty and incompressible inputs still carry their true cost.

Stream layout: 4-byte magic ``PMC1``, 1 compressor-id byte, 8-byte
little-endian original length, then the token body.  The high bit of the
id byte marks a stored (uncompressed) body, used whenever the token
stream would be at least as long as the input itself; this keeps the
output within a constant of the input size on incompressible data.
"""

import struct

import numpy as np

from . import eca, kernels

__all__ = [
    "StreamFormatError",
    "COMPRESSORS",
    "MAGIC",
    "HEADER_LEN",
    "compress",
    "decompress",
    "compressed_size_bits",
    "serialize_diagram",
]

MAGIC = b"PMC1"
HEADER_LEN = 13
_STORED = 0x80

COMPRESSORS = {"builtin-lzss": 1, "rle": 2}
_BY_ID = {v: k for k, v in COMPRESSORS.items()}


class StreamFormatError(ValueError):
    """Raised when a stream fails validation during decompression."""


def _compressor_id(name):
    try:
        return COMPRESSORS[name]
    except KeyError:
        raise ValueError(
            "unknown compressor %r (known: %s)" % (name, ", ".join(sorted(COMPRESSORS)))
        ) from None


def compress(data, compressor="builtin-lzss"):
    """Compress bytes into a self-describing stream."""
    cid = _compressor_id(compressor)
    arr = np.frombuffer(data, dtype=np.uint8)
    if cid == 1:
        body = kernels.lzss_encode(arr).tobytes()
    else:
        body = kernels.rle_encode(arr).tobytes()
    n = len(data)
    if n > 0 and len(body) >= n:
        return MAGIC + bytes([cid | _STORED]) + struct.pack("<Q", n) + data
    return MAGIC + bytes([cid]) + struct.pack("<Q", n) + body


def decompress(blob):
    """Invert compress(); raises StreamFormatError on any malformed stream."""
    if len(blob) < HEADER_LEN:
        raise StreamFormatError("truncated header")
    if blob[:4] != MAGIC:
        raise StreamFormatError("bad magic")
    idbyte = blob[4]
    cid = idbyte & 0x7F
    if cid not in _BY_ID:
        raise StreamFormatError("unknown compressor id")
    (n,) = struct.unpack("<Q", blob[5:HEADER_LEN])
    body = blob[HEADER_LEN:]
    if idbyte & _STORED:
        if len(body) != n:
            raise StreamFormatError("stored body length mismatch")
        return body
    tokens = np.frombuffer(body, dtype=np.uint8)
    if cid == 1:
        # a match token (24 bits) yields at most 258 bytes, so any valid
        # stream satisfies n <= len(body) * 8 * 258 / 24; reject before
        # allocating output for an absurd declared length
        if n > len(body) * 86:
            raise StreamFormatError("declared length exceeds stream capacity")
        try:
            out, bits = kernels.lzss_decode(tokens, n)
        except ValueError as exc:
            raise StreamFormatError(str(exc)) from None
        if len(body) != (bits + 7) // 8:
            raise StreamFormatError("trailing data")
        pad = len(body) * 8 - bits
        if pad and body[-1] & ((1 << pad) - 1):
            raise StreamFormatError("nonzero padding bits")
        return out.tobytes()
    # each (count, value) pair yields at most 255 bytes
    if n > (len(body) // 2) * 255:
        raise StreamFormatError("declared length exceeds stream capacity")
    try:
        out = kernels.rle_decode(tokens, n)
    except ValueError as exc:
        raise StreamFormatError(str(exc)) from None
    return out.tobytes()


def compressed_size_bits(data, compressor="builtin-lzss"):
    """Size of the compressed stream in bits, header included."""
    return 8 * len(compress(data, compressor))


def serialize_diagram(diag, mode="ascii"):
    """Serialize a space-time diagram for compression.

    ascii  : '0'/'1' rows with newlines, (width + 1) * (steps + 1) bytes
    packed : binary header plus row-major MSB-first packed bits
    """
    if mode == "ascii":
        return eca.cells_to_text(diag.cells).encode("ascii")
    if mode == "packed":
        return eca.diagram_to_bytes(diag)
    raise ValueError("unknown serialization mode %r" % (mode,))
