# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import numpy as np
import pandas as pd
import scipy.stats

from .correction import fdr_benjamini_hochberg

KEYS = ['date', 'hour', 'view']
OVERALL = 'all'


def compare_dgp(table_a: pd.DataFrame, table_b: pd.DataFrame,
                alternative: str = 'two-sided',
                p_val_approx: str = 'auto') -> pd.DataFrame:
    """Paired comparison of two glare sweeps of the same views.

    Rows pair on (date, hour, view). One result row per date and one
    overall row; q-values correct the per-date tests.
    """
    _alternative_comps(alternative)
    paired = pd.merge(table_a[KEYS + ['dgp', 'level']],
                      table_b[KEYS + ['dgp', 'level']],
                      on=KEYS, how='inner', suffixes=(':A', ':B'))
    if paired.empty:
        raise ValueError('The two sweep tables share no (date, hour, view)'
                         ' rows; they must come from the same sweep'
                         ' settings.')
    unpaired = len(table_a) + len(table_b) - 2 * len(paired)
    if unpaired:
        raise ValueError('%d sweep rows have no partner in the other table.'
                         % unpaired)

    table = []
    for date in sorted(paired['date'].unique()):
        row = _compare_wilcoxon(paired[paired['date'] == date], alternative,
                                p_val_approx)
        row['date'] = date
        table.append(row)
    overall = _compare_wilcoxon(paired, alternative, p_val_approx)
    overall['date'] = OVERALL
    table.append(overall)

    df = pd.DataFrame(table)
    df = fdr_benjamini_hochberg(df, rows=df['date'] != OVERALL)
    return _set_attrs(df, alternative, p_val_approx)


def _compare_wilcoxon(pairs, alternative, p_val_approx) -> dict:
    a = pairs['dgp:A'].to_numpy(dtype=float)
    b = pairs['dgp:B'].to_numpy(dtype=float)
    if p_val_approx == 'asymptotic':
        # scipy names the normal approximation 'approx'
        p_val_approx = 'approx'
    results = {
        'n': len(pairs),
        'A:dgp': a.mean(),
        'B:dgp': b.mean(),
        'mean-difference': (a - b).mean(),
        'level-agreement': float(np.mean(pairs['level:A']
                                         == pairs['level:B'])),
    }
    if np.all(a == b):
        stat, p_val = float('nan'), float('nan')
    else:
        stat, p_val = scipy.stats.wilcoxon(a, b, method=p_val_approx,
                                           alternative=alternative)
    results['test-statistic'] = stat
    results['p-value'] = p_val
    return results


def _set_attrs(df, alternative, p_val_approx):
    df = df[['date', 'n', 'A:dgp', 'B:dgp', 'mean-difference',
             'level-agreement', 'test-statistic', 'p-value', 'q-value']]

    df['date'].attrs.update({
        'title': 'date',
        'description': 'Sweep date (MM-DD), or "all" for every row.'
    })
    df['n'].attrs.update({
        'title': 'count',
        'description': 'The number of paired views used in the test.'
    })
    df['A:dgp'].attrs.update({
        'title': 'mean DGP of A',
        'description': 'The mean glare probability of table A.'
    })
    df['B:dgp'].attrs.update({
        'title': 'mean DGP of B',
        'description': 'The mean glare probability of table B.'
    })
    df['mean-difference'].attrs.update({
        'title': 'mean A - B',
        'description': 'Mean paired DGP difference.'
    })
    df['level-agreement'].attrs.update({
        'title': 'level agreement',
        'description': 'Fraction of views placed in the same glare level.'
    })
    df['test-statistic'].attrs.update({
        'title': 'Wilcoxon T',
        'description': 'The sum of rank differences.'
    })
    df['p-value'].attrs.update({
        'title': f'{alternative}, {p_val_approx}',
        'description': 'The probability of obtaining a test-statistic at least'
                       ' as extreme as observed under the null distribution.'
                       ' NaN when the paired values are identical.'
    })
    return df


def _alternative_comps(alternative):
    if alternative not in ('two-sided', 'greater', 'less'):
        raise ValueError("A sweep comparison asks whether the first"
                         " table's DGP is higher, lower or different;"
                         " alternative must be 'two-sided', 'greater'"
                         " or 'less', got %r." % alternative)
