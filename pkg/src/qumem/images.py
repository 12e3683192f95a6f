"""Minimal PGM (P2/P5) and PPM (P6) readers and writers.

Dependency-free on purpose: the files involved are tiny frame dumps and
heatmaps. Only 8-bit samples (maxval <= 255) are supported.
"""

import numpy as np

from .errors import ImageFormatError

_WHITESPACE = b" \t\r\n\x0b\x0c"


def _next_token(data: bytes, pos: int, path) -> tuple:
    n = len(data)
    while pos < n:
        byte = data[pos:pos + 1]
        if byte in _WHITESPACE:
            pos += 1
        elif byte == b"#":
            while pos < n and data[pos:pos + 1] not in b"\r\n":
                pos += 1
        else:
            break
    if pos >= n:
        raise ImageFormatError("%s: truncated header" % path)
    start = pos
    while pos < n and data[pos:pos + 1] not in _WHITESPACE:
        pos += 1
    return data[start:pos], pos


def _header_int(data, pos, path, what, upper=None):
    token, pos = _next_token(data, pos, path)
    try:
        value = int(token)
    except ValueError:
        raise ImageFormatError("%s: bad %s %r" % (path, what, token)) from None
    if value < 1 or (upper is not None and value > upper):
        raise ImageFormatError("%s: unsupported %s %d" % (path, what, value))
    return value, pos


def read_image(path):
    """Read a PGM or PPM file.

    Returns (pixels, maxval) where pixels is uint8 with shape (H, W) for
    grayscale or (H, W, 3) for RGB.
    """
    with open(path, "rb") as handle:
        data = handle.read()
    magic, pos = _next_token(data, 0, path)
    if magic not in (b"P2", b"P5", b"P6"):
        raise ImageFormatError(
            "%s: unsupported magic %r (want P2, P5, or P6)" % (path, magic)
        )
    width, pos = _header_int(data, pos, path, "width")
    height, pos = _header_int(data, pos, path, "height")
    maxval, pos = _header_int(data, pos, path, "maxval", upper=255)
    channels = 3 if magic == b"P6" else 1
    count = width * height * channels
    if magic == b"P2":
        values = []
        while len(values) < count:
            token, pos = _next_token(data, pos, path)
            try:
                values.append(int(token))
            except ValueError:
                raise ImageFormatError("%s: bad sample %r" % (path, token)) from None
        flat = np.array(values)
    else:
        # exactly one whitespace byte separates the maxval from the raster
        if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
            raise ImageFormatError("%s: missing raster separator" % path)
        raster = data[pos + 1:pos + 1 + count]
        if len(raster) < count:
            raise ImageFormatError(
                "%s: raster holds %d bytes, need %d" % (path, len(raster), count)
            )
        flat = np.frombuffer(raster, dtype=np.uint8).astype(int)
    if flat.min() < 0 or flat.max() > maxval:
        raise ImageFormatError("%s: sample outside 0..%d" % (path, maxval))
    pixels = flat.astype(np.uint8)
    if channels == 3:
        return pixels.reshape(height, width, 3), maxval
    return pixels.reshape(height, width), maxval


def _as_byte_plane(pixels, expected_ndim):
    arr = np.asarray(pixels)
    if arr.ndim != expected_ndim or arr.size == 0:
        raise ImageFormatError("pixel array must be non-empty %d-D" % expected_ndim)
    if np.issubdtype(arr.dtype, np.floating):
        arr = np.rint(arr)
    if arr.min() < 0 or arr.max() > 255:
        raise ImageFormatError("pixel values must lie in 0..255")
    return arr.astype(np.uint8)


def write_pgm(path, pixels) -> None:
    """Write a 2-D uint8 array as binary PGM (P5, maxval 255)."""
    arr = _as_byte_plane(pixels, 2)
    height, width = arr.shape
    with open(path, "wb") as handle:
        handle.write(b"P5\n%d %d\n255\n" % (width, height))
        handle.write(arr.tobytes())


def write_ppm(path, pixels) -> None:
    """Write an (H, W, 3) uint8 array as binary PPM (P6, maxval 255)."""
    arr = _as_byte_plane(pixels, 3)
    if arr.shape[2] != 3:
        raise ImageFormatError("PPM needs 3 channels, got %d" % arr.shape[2])
    height, width = arr.shape[:2]
    with open(path, "wb") as handle:
        handle.write(b"P6\n%d %d\n255\n" % (width, height))
        handle.write(arr.tobytes())
