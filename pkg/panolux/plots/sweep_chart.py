# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import importlib.resources
import json
import os

import jinja2
import pandas as pd

from panolux.util import json_replace

CELL_WIDTH = 24


def plot_dgp_sweep(output_dir: str, table: pd.DataFrame,
                   stats: pd.DataFrame = None):
    """Write ``index.html`` with a DGP heatmap (hour by view, one row of
    panels per date) and, when given, the table from ``compare_dgp``."""
    table1 = None
    if stats is not None:
        table1, stats = _make_stats(stats)

    J_ENV = jinja2.Environment(
        loader=jinja2.PackageLoader('panolux.plots', 'specs')
    )
    index = J_ENV.get_template('index.html')

    n_views = table['view'].nunique()
    x_label = table['view'].attrs.get('title', 'view')
    title = 'Daylight glare probability by date, hour and %s' % x_label
    figure1 = (
        f'Heatmap of daylight glare probability for {n_views} level views'
        f' around the viewpoint. Each panel is one date; rows are local'
        f' standard times and columns are views, view 1 looking along room'
        f' azimuth 0. Values of 0.35 and above are perceptible glare, 0.40'
        f' disturbing and 0.45 intolerable.')

    records = json.loads(table.to_json(orient='records'))
    spec = (importlib.resources.files('panolux.plots') / 'specs'
            / 'dgp_heatmap.json')
    with spec.open() as fh:
        json_obj = json.load(fh)
    full_spec = json_replace(json_obj, data=records, title=title,
                             x_label=x_label, width=CELL_WIDTH * n_views)

    with open(os.path.join(output_dir, 'index.html'), 'w') as fh:
        spec_string = json.dumps(full_spec)
        fh.write(index.render(title=title, spec=spec_string, stats=stats,
                              figure1=figure1, table1=table1))


def _make_stats(stats):
    pval_method = stats['p-value'].attrs.get('title', 'p-value')
    qval_method = stats['q-value'].attrs.get('title', 'q-value')
    table1 = (f'Paired Wilcoxon signed-rank tests of DGP between sweeps A'
              f' and B per date, with {pval_method} p-value calculations'
              f' and {qval_method} correction across dates (q-value).')
    html = stats.to_html(index=False, float_format='%.4g', na_rep='-')
    return table1, html
