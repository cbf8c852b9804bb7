"""Image file I/O for depth maps and guidance images.

Depth maps travel as PGM (P2/P5, maxval up to 65535) or PFM (32-bit float,
endianness given by the sign of the scale field). Guidance images may
additionally be PNG (read-only); RGB guides are converted to gray.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np
from PIL import Image

__all__ = [
    "ImageIOError",
    "MalformedHeaderError",
    "TruncatedPayloadError",
    "UnsupportedFormatError",
    "read_image",
    "write_image",
    "read_guide",
    "to_grayscale",
]

# ITU-R BT.601 luma weights
_LUMA = (0.299, 0.587, 0.114)


class ImageIOError(Exception):
    """Base class for image parse/serialize failures."""


class MalformedHeaderError(ImageIOError):
    """Header is syntactically invalid or carries illegal values."""


class TruncatedPayloadError(ImageIOError):
    """File ended before the pixel payload announced by the header."""


class UnsupportedFormatError(ImageIOError):
    """Magic number or requested format is not supported."""


def _pnm_tokens(f):
    """Yield whitespace-separated header tokens, skipping '#' comments."""
    while True:
        ch = f.read(1)
        if not ch:
            raise MalformedHeaderError("unexpected end of header")
        if ch.isspace():
            continue
        if ch == b"#":
            while ch and ch != b"\n":
                ch = f.read(1)
            continue
        tok = bytearray(ch)
        while True:
            ch = f.read(1)
            if not ch or ch.isspace():
                break
            tok.extend(ch)
        yield bytes(tok)


def _read_pgm(f) -> np.ndarray:
    magic = f.read(2)
    if magic not in (b"P2", b"P5"):
        raise UnsupportedFormatError(f"not a PGM file (magic {magic!r})")
    tokens = _pnm_tokens(f)
    try:
        width, height, maxval = (int(next(tokens)) for _ in range(3))
    except ValueError as exc:
        raise MalformedHeaderError(f"non-numeric PGM header field: {exc}") from exc
    if width <= 0 or height <= 0:
        raise MalformedHeaderError(f"malformed header: bad dimensions {width}x{height}")
    if maxval <= 0 or maxval > 65535:
        raise MalformedHeaderError(f"malformed header: maxval {maxval} out of range")

    n = width * height
    if magic == b"P2":
        data = f.read().split()
        if len(data) < n:
            raise TruncatedPayloadError(f"expected {n} samples, found {len(data)}")
        try:
            values = np.array([int(v) for v in data[:n]], dtype=np.float64)
        except ValueError as exc:
            raise MalformedHeaderError(f"non-numeric P2 sample: {exc}") from exc
    else:
        # P5: one byte per sample up to maxval 255, two bytes big-endian above
        itemsize = 1 if maxval <= 255 else 2
        raw = f.read(n * itemsize)
        if len(raw) < n * itemsize:
            raise TruncatedPayloadError(
                f"expected {n * itemsize} payload bytes, found {len(raw)}"
            )
        dtype = ">u1" if itemsize == 1 else ">u2"
        values = np.frombuffer(raw, dtype=dtype, count=n).astype(np.float64)
    if values.max(initial=0) > maxval or values.min(initial=0) < 0:
        raise MalformedHeaderError("sample value outside [0, maxval]")
    return values.reshape(height, width)


def _read_pfm(f) -> np.ndarray:
    magic = f.read(2)
    if magic not in (b"Pf", b"PF"):
        raise UnsupportedFormatError(f"not a PFM file (magic {magic!r})")
    tokens = _pnm_tokens(f)
    try:
        width = int(next(tokens))
        height = int(next(tokens))
        scale = float(next(tokens))
    except ValueError as exc:
        raise MalformedHeaderError(f"non-numeric PFM header field: {exc}") from exc
    if width <= 0 or height <= 0:
        raise MalformedHeaderError(f"malformed header: bad dimensions {width}x{height}")
    if scale == 0.0:
        raise MalformedHeaderError("malformed header: zero scale factor")

    channels = 3 if magic == b"PF" else 1
    n = width * height * channels
    raw = f.read(4 * n)
    if len(raw) < 4 * n:
        raise TruncatedPayloadError(f"expected {4 * n} payload bytes, found {len(raw)}")
    endian = "<" if scale < 0 else ">"
    values = np.frombuffer(raw, dtype=f"{endian}f4", count=n).astype(np.float64)
    if channels == 3:
        img = values.reshape(height, width, 3)
    else:
        img = values.reshape(height, width)
    # PFM rows are stored bottom-to-top
    return np.flipud(img).copy()


_READERS = {"pgm": _read_pgm, "pfm": _read_pfm}
_MAGIC_FMT = {b"P2": "pgm", b"P5": "pgm", b"Pf": "pfm", b"PF": "pfm"}


def _base_format(fmt: str) -> str:
    """Map a declared format name ("pgm8", "pgm-16", "pfm", ...) to pgm/pfm."""
    base = fmt.lower().replace("-", "")
    for known in _READERS:
        if base.startswith(known):
            return known
    raise UnsupportedFormatError(f"unsupported format {fmt!r}")


def read_image(path, fmt: str | None = None) -> np.ndarray:
    """Read a PGM or PFM image into a float64 array (rows x cols).

    PGM samples come back as their raw integer levels; PFM as the stored
    floats. `fmt` ("pgm", "pfm") is checked against the file's magic when
    given, otherwise the magic decides.
    """
    path = Path(path)
    with open(path, "rb") as f:
        magic = f.read(2)
        f.seek(0)
        actual = _MAGIC_FMT.get(magic)
        if actual is None:
            raise UnsupportedFormatError(f"{path}: unrecognized magic {magic!r}")
        if fmt is not None and actual != _base_format(fmt):
            raise UnsupportedFormatError(
                f"{path}: declared {fmt!r} but file is {actual!r}"
            )
        img = _READERS[actual](f)
    if not np.isfinite(img).all():
        raise ImageIOError(f"{path}: non-finite pixel in payload")
    return img


def write_image(img: np.ndarray, path, fmt: str | None = None) -> None:
    """Write a 2-D array as "pgm8", "pgm16" (rounded/clipped) or "pfm".

    With fmt=None the file extension picks pfm/pgm16. Non-finite pixels are
    rejected rather than silently encoded.
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {img.shape}")
    if not np.isfinite(img).all():
        raise ImageIOError("non-finite pixel; refusing to write")
    path = Path(path)
    if fmt is None:
        fmt = {".pfm": "pfm", ".pgm": "pgm16"}.get(path.suffix.lower())
        if fmt is None:
            raise UnsupportedFormatError(f"cannot infer format from {path.suffix!r}")
    fmt = fmt.lower()

    if fmt == "pfm":
        h, w = img.shape
        payload = np.flipud(img).astype("<f4").tobytes()
        with open(path, "wb") as f:
            f.write(f"Pf\n{w} {h}\n-1.0\n".encode("ascii"))
            f.write(payload)
    elif fmt in ("pgm8", "pgm16"):
        maxval = 255 if fmt == "pgm8" else 65535
        q = np.clip(np.rint(img), 0, maxval)
        h, w = img.shape
        dtype = ">u1" if maxval <= 255 else ">u2"
        with open(path, "wb") as f:
            f.write(f"P5\n{w} {h}\n{maxval}\n".encode("ascii"))
            f.write(q.astype(dtype).tobytes())
    else:
        raise UnsupportedFormatError(f"unsupported format {fmt!r}")


def to_grayscale(rgb: np.ndarray) -> np.ndarray:
    """BT.601 luma of an (H, W, 3) array with channels in [0, 1]."""
    rgb = np.asarray(rgb, dtype=np.float64)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValueError(f"expected 3 channels, got shape {rgb.shape}")
    gray = _LUMA[0] * rgb[..., 0] + _LUMA[1] * rgb[..., 1] + _LUMA[2] * rgb[..., 2]
    return np.clip(gray, 0.0, 1.0)


def read_guide(path) -> np.ndarray:
    """Read a guidance image normalized to [0, 1].

    PNG (8/16-bit, gray or RGB[A]) via Pillow; PGM normalized by its maxval
    is not recoverable after read_image, so PGM/PFM guides are rescaled by
    their own max when it exceeds 1.
    """
    path = Path(path)
    if path.suffix.lower() == ".png":
        with Image.open(path) as im:
            if im.mode in ("RGB", "RGBA", "P"):
                arr = np.asarray(im.convert("RGB"), dtype=np.float64) / 255.0
                return to_grayscale(arr)
            if im.mode == "L":
                return np.asarray(im, dtype=np.float64) / 255.0
            if im.mode == "I;16":
                return np.asarray(im, dtype=np.float64) / 65535.0
            arr = np.asarray(im.convert("F"), dtype=np.float64)
            peak = arr.max()
            return np.clip(arr / peak if peak > 1.0 else arr, 0.0, 1.0)
    img = read_image(path)
    peak = img.max()
    if peak > 1.0:
        img = img / peak
    return np.clip(img, 0.0, 1.0)
