# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from .correction import fdr_benjamini_hochberg
from .pairwise import compare_dgp

__all__ = ['fdr_benjamini_hochberg', 'compare_dgp']
