# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from .image import HdrImage
from .rgbe import (
    MalformedHeader, UnsupportedOrientation, TruncatedScanline, decode_rgbe,
    encode_rgbe, rgbe_to_float, float_to_rgbe, read_hdr, write_hdr,
    read_hdr_file, write_hdr_file)
from .raster import IoFailure, write_raster_png

__all__ = ['HdrImage', 'MalformedHeader', 'UnsupportedOrientation',
           'TruncatedScanline', 'decode_rgbe', 'encode_rgbe', 'rgbe_to_float',
           'float_to_rgbe', 'read_hdr', 'write_hdr', 'read_hdr_file',
           'write_hdr_file', 'IoFailure', 'write_raster_png']
