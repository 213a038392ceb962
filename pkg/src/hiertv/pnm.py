"""Binary PGM (P5) / PPM (P6) codec with maxval 255, plus mask files."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .raster import as_mask, as_raster

_WHITESPACE = b" \t\n\r\v\f"


class PNMError(ValueError):
    """Base class for PNM parse failures."""


class PNMHeaderError(PNMError):
    pass


class PNMMaxvalError(PNMError):
    pass


class PNMTruncatedError(PNMError):
    pass


def _read_header(data):
    """Return (magic, width, height, maxval, payload_offset)."""
    if len(data) < 2 or data[:2] not in (b"P5", b"P6"):
        raise PNMHeaderError("expected magic number P5 or P6")
    pos = 2
    tokens = []
    while len(tokens) < 3:
        if pos >= len(data):
            raise PNMHeaderError("header ended before width/height/maxval")
        ch = data[pos : pos + 1]
        if ch in _WHITESPACE:
            pos += 1
            continue
        if ch == b"#":
            end = data.find(b"\n", pos)
            if end < 0:
                raise PNMHeaderError("unterminated comment in header")
            pos = end + 1
            continue
        start = pos
        while pos < len(data) and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
            pos += 1
        tok = data[start:pos]
        if not tok.isdigit():
            raise PNMHeaderError(f"non-numeric header field {tok!r}")
        tokens.append(int(tok))
    width, height, maxval = tokens
    if width < 1 or height < 1:
        raise PNMHeaderError(f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise PNMMaxvalError(f"only maxval 255 is supported, got {maxval}")
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise PNMHeaderError("missing whitespace after maxval")
    return data[:2].decode(), width, height, maxval, pos + 1


def load_pnm(data):
    """Decode P5/P6 bytes into a raster with samples scaled to [0, 1]."""
    data = bytes(data)
    magic, width, height, _, off = _read_header(data)
    nch = 1 if magic == "P5" else 3
    n = width * height * nch
    payload = data[off : off + n]
    if len(payload) < n:
        raise PNMTruncatedError(f"payload has {len(payload)} bytes, expected {n}")
    arr = np.frombuffer(payload, dtype=np.uint8).astype(np.float64) / 255.0
    if nch == 1:
        return arr.reshape(height, width)
    return arr.reshape(height, width, 3)


def to_bytes8(r):
    return np.clip(np.floor(np.asarray(r, dtype=np.float64) * 255.0 + 0.5), 0, 255).astype(np.uint8)


def save_pnm(r):
    """Encode a raster as P5 (grayscale) or P6 (RGB)."""
    r = as_raster(r)
    magic = b"P5" if r.ndim == 2 else b"P6"
    h, w = r.shape[:2]
    return magic + f"\n{w} {h}\n255\n".encode() + to_bytes8(r).tobytes()


def load_mask(data):
    """Decode a P5 mask: samples >= 128 are masked."""
    data = bytes(data)
    magic, width, height, _, off = _read_header(data)
    if magic != "P5":
        raise PNMHeaderError("mask files must be P5 (grayscale)")
    n = width * height
    payload = data[off : off + n]
    if len(payload) < n:
        raise PNMTruncatedError(f"payload has {len(payload)} bytes, expected {n}")
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width) >= 128


def save_mask(m):
    m = as_mask(m)
    h, w = m.shape
    return b"P5" + f"\n{w} {h}\n255\n".encode() + np.where(m, 255, 0).astype(np.uint8).tobytes()


def read_image(path):
    return load_pnm(Path(path).read_bytes())


def write_image(path, r):
    Path(path).write_bytes(save_pnm(r))


def read_mask(path):
    return load_mask(Path(path).read_bytes())


def write_mask(path, m):
    Path(path).write_bytes(save_mask(m))
