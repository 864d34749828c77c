# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import io
import logging
import math
import re

import numpy as np

from panolux.projection import Projection
from .image import HdrImage

logger = logging.getLogger(__name__)

MAGICS = ('#?RADIANCE', '#?RGBE')
RGBE_FORMAT = '32-bit_rle_rgbe'
FISHEYE_VIEW = 'VIEW= -vta -vh 180 -vv 180'
MIN_RLE_WIDTH = 8
MAX_RLE_WIDTH = 32767
MIN_RUN = 4

_STANDARD_RESOLUTION = re.compile(r'^-Y (\d+) \+X (\d+)$')
_ANY_RESOLUTION = re.compile(r'^[+-][XY] \d+ [+-][XY] \d+$')


class MalformedHeader(ValueError):
    pass


class UnsupportedOrientation(ValueError):
    pass


class TruncatedScanline(ValueError):
    pass


def decode_rgbe(quad) -> tuple:
    r, g, b, e = (int(c) for c in quad)
    if e == 0:
        return (0.0, 0.0, 0.0)
    scale = math.ldexp(1.0, e - 136)
    return ((r + 0.5) * scale, (g + 0.5) * scale, (b + 0.5) * scale)


def encode_rgbe(rgb) -> tuple:
    rgb = np.asarray(rgb, dtype=float)
    if rgb.shape != (3,):
        raise ValueError('An RGB triple is required, got shape %r.'
                         % (rgb.shape,))
    return tuple(int(c) for c in float_to_rgbe(rgb))


def rgbe_to_float(rgbe) -> np.ndarray:
    """Vectorised :func:`decode_rgbe` over an (..., 4) byte array."""
    rgbe = np.asarray(rgbe, dtype=np.uint8)
    e = rgbe[..., 3].astype(np.int32)
    scale = np.where(e > 0, np.ldexp(1.0, e - 136), 0.0)
    return (rgbe[..., :3] + 0.5) * scale[..., None]


def float_to_rgbe(rgb) -> np.ndarray:
    """Shared-exponent encoding of an (..., 3) array of radiances.

    Values whose exponent would fall below the representable range
    (max component under 2**-128) encode as black.
    """
    rgb = np.asarray(rgb, dtype=float)
    if not np.all(np.isfinite(rgb)) or np.any(rgb < 0):
        raise ValueError('RGBE encoding needs finite, non-negative values.')
    v = rgb.max(axis=-1)
    mantissa, exponent = np.frexp(v)
    ok = (v > 0) & (exponent + 128 >= 1)
    if np.any(exponent[ok] + 128 > 255):
        raise ValueError('Radiance values of %g and above cannot be'
                         ' represented in RGBE.' % math.ldexp(1.0, 127))
    scale = np.where(ok, mantissa * 256.0 / np.where(ok, v, 1.0), 0.0)
    out = np.zeros(rgb.shape[:-1] + (4,), dtype=np.uint8)
    out[..., :3] = np.clip(np.floor(rgb * scale[..., None]), 0, 255)
    out[..., 3] = np.where(ok, exponent + 128, 0)
    return out


def read_hdr(stream) -> HdrImage:
    """Parse a Radiance picture from bytes or a binary file object."""
    if isinstance(stream, (bytes, bytearray, memoryview)):
        stream = io.BytesIO(bytes(stream))
    exposure, extra, (height, width) = _read_header(stream)
    data = stream.read()
    rgbe = np.empty((height, width, 4), dtype=np.uint8)
    pos = 0
    for y in range(height):
        pos = _decode_scanline(data, pos, width, rgbe[y], y)
    if pos != len(data):
        logger.warning('Ignoring %d trailing bytes after the last scanline.',
                       len(data) - pos)

    if any(line.startswith('VIEW=') and '-vta' in line.split()
           for line in extra):
        projection = Projection.FISHEYE180
    elif width == 2 * height:
        projection = Projection.EQUIRECTANGULAR
    else:
        projection = Projection.UNSPECIFIED

    pixels = rgbe_to_float(rgbe) / exposure
    return HdrImage(pixels, exposure=exposure, projection=projection,
                    header=tuple(extra))


def _read_header(fh):
    magic = fh.readline().rstrip(b'\r\n').decode('latin-1')
    if magic not in MAGICS:
        raise MalformedHeader('Not a Radiance picture: the stream must start'
                              ' with #?RADIANCE or #?RGBE.')
    fmt = None
    exposure = 1.0
    extra = []
    while True:
        line = fh.readline()
        if not line:
            raise MalformedHeader('The header ended before the blank line'
                                  ' that separates it from the resolution.')
        text = line.rstrip(b'\r\n').decode('latin-1')
        if not text.strip():
            break
        if text.startswith('FORMAT='):
            fmt = text[len('FORMAT='):].strip()
        elif text.startswith('EXPOSURE='):
            try:
                value = float(text[len('EXPOSURE='):])
            except ValueError:
                raise MalformedHeader('Unreadable header line %r.' % text)
            if not (math.isfinite(value) and value > 0):
                raise MalformedHeader('EXPOSURE must be positive, got %r.'
                                      % text)
            exposure *= value
        else:
            extra.append(text)
    if fmt is None:
        raise MalformedHeader('The header has no FORMAT line.')
    if fmt != RGBE_FORMAT:
        raise MalformedHeader('Only FORMAT=%s is supported, got %r.'
                              % (RGBE_FORMAT, fmt))

    resolution = fh.readline().rstrip(b'\r\n').decode('latin-1').strip()
    match = _STANDARD_RESOLUTION.match(resolution)
    if match is None:
        if _ANY_RESOLUTION.match(resolution):
            raise UnsupportedOrientation(
                'Only the standard "-Y H +X W" scanline order is supported,'
                ' got %r.' % resolution)
        raise MalformedHeader('Missing or unreadable resolution line %r.'
                              % resolution)
    height, width = int(match.group(1)), int(match.group(2))
    if height == 0 or width == 0:
        raise MalformedHeader('The picture has no pixels (%r).' % resolution)
    return exposure, extra, (height, width)


def _decode_scanline(data, pos, width, row, y):
    n = len(data)
    if pos + 4 > n:
        raise TruncatedScanline('The data ends before scanline %d.' % y)
    head = data[pos:pos + 4]
    if not (MIN_RLE_WIDTH <= width <= MAX_RLE_WIDTH and head[0] == 2
            and head[1] == 2 and not head[2] & 0x80):
        end = pos + 4 * width
        if end > n:
            raise TruncatedScanline('Flat scanline %d is truncated.' % y)
        row[:] = np.frombuffer(data, np.uint8, 4 * width, pos).reshape(
            width, 4)
        return end

    if (head[2] << 8) | head[3] != width:
        raise TruncatedScanline('Scanline %d declares length %d but the'
                                ' picture is %d wide.'
                                % (y, (head[2] << 8) | head[3], width))
    pos += 4
    for c in range(4):
        x = 0
        while x < width:
            if pos >= n:
                raise TruncatedScanline('Run-length scanline %d is'
                                        ' truncated.' % y)
            count = data[pos]
            pos += 1
            if count > 128:
                count -= 128
                if x + count > width or pos >= n:
                    raise TruncatedScanline('Run overruns scanline %d.' % y)
                row[x:x + count, c] = data[pos]
                pos += 1
            else:
                if count == 0 or x + count > width or pos + count > n:
                    raise TruncatedScanline('Literal overruns scanline %d.'
                                            % y)
                row[x:x + count, c] = np.frombuffer(data, np.uint8, count,
                                                    pos)
                pos += count
            x += count
    return pos


def write_hdr(img: HdrImage) -> bytes:
    lines = ['#?RADIANCE', 'FORMAT=' + RGBE_FORMAT, 'EXPOSURE=1.0']
    lines += [line for line in img.header if not line.startswith('VIEW=')]
    if img.projection is Projection.FISHEYE180:
        lines.append(FISHEYE_VIEW)
    out = bytearray(('\n'.join(lines) + '\n\n-Y %d +X %d\n'
                     % (img.height, img.width)).encode('latin-1'))

    rgbe = float_to_rgbe(img.pixels)
    rle = MIN_RLE_WIDTH <= img.width <= MAX_RLE_WIDTH
    for y in range(img.height):
        if rle:
            out += bytes((2, 2, img.width >> 8, img.width & 0xFF))
            for c in range(4):
                out += _encode_channel(rgbe[y, :, c].tobytes())
        else:
            out += rgbe[y].tobytes()
    return bytes(out)


def _run_length(data, i, limit):
    j = i + 1
    while j < len(data) and j - i < limit and data[j] == data[i]:
        j += 1
    return j - i


def _encode_channel(data: bytes) -> bytes:
    out = bytearray()
    i = 0
    while i < len(data):
        run = _run_length(data, i, 127)
        if run >= MIN_RUN:
            out += bytes((128 + run, data[i]))
            i += run
            continue
        start = i
        while i < len(data) and i - start < 128:
            if _run_length(data, i, MIN_RUN) >= MIN_RUN:
                break
            i += 1
        out.append(i - start)
        out += data[start:i]
    return bytes(out)


def read_hdr_file(path) -> HdrImage:
    with open(path, 'rb') as fh:
        return read_hdr(fh)


def write_hdr_file(img: HdrImage, path):
    with open(path, 'wb') as fh:
        fh.write(write_hdr(img))
    logger.info('Wrote %dx%d picture to %s', img.width, img.height, path)
