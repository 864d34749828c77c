# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import logging

import numpy as np
from PIL import Image

logger = logging.getLogger(__name__)


class IoFailure(OSError):
    pass


def write_raster_png(image, path):
    """Write an 8-bit (height, width, 3) RGB array as a PNG file."""
    image = np.asarray(image)
    if image.dtype != np.uint8 or image.ndim != 3 or image.shape[2] != 3:
        raise ValueError('PNG output needs an 8-bit (height, width, 3) array,'
                         ' got %s with shape %r.' % (image.dtype, image.shape))
    try:
        Image.fromarray(np.ascontiguousarray(image)).save(path, format='PNG')
    except OSError as e:
        raise IoFailure('Could not write %s: %s' % (path, e)) from e
    logger.info('Wrote %dx%d raster to %s', image.shape[1], image.shape[0],
                path)
