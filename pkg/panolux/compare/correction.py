# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import numpy as np
import pandas as pd
from statsmodels.stats.multitest import multipletests


def fdr_benjamini_hochberg(stats: pd.DataFrame, rows=None) -> pd.DataFrame:
    """Add a ``q-value`` column; ``rows`` restricts the family of tests
    (a boolean mask), other rows keep their p-value. Untestable (NaN)
    p-values stay NaN."""
    rows = (np.ones(len(stats), dtype=bool) if rows is None
            else np.asarray(rows, dtype=bool))
    p_values = stats['p-value'].to_numpy(dtype=float)
    q_values = p_values.copy()
    family = rows & ~np.isnan(p_values)
    if family.any():
        q_values[family] = multipletests(p_values[family],
                                         method='fdr_bh')[1]
    stats['q-value'] = q_values
    stats['q-value'].attrs.update({
        'title': 'Benjamini-Hochberg',
        'description': 'Adjusted p-values to control false-discovery rate.'
    })

    return stats
