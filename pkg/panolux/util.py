# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import os

import numpy as np

THREADS_ENV = 'PANOLUX_THREADS'


def json_replace(json_obj, **values):
    """
    Search for elements of `{"{{REPLACE_PARAM}}": "some_key"}` and replace
    with the result of `values["some_key"]`.
    """
    if isinstance(json_obj, dict) and list(json_obj) == ["{{REPLACE_PARAM}}"]:
        param_name = json_obj["{{REPLACE_PARAM}}"]
        if param_name not in values:
            raise ValueError("No value was supplied for the template"
                             " parameter %r." % param_name)
        return values[param_name]

    if isinstance(json_obj, list):
        return [json_replace(x, **values) for x in json_obj]

    elif isinstance(json_obj, dict):
        return {key: json_replace(value, **values)
                for key, value in json_obj.items()}

    else:
        return json_obj


def default_n_jobs() -> int:
    """Worker count from ``PANOLUX_THREADS``, all cores (-1) if unset."""
    raw = os.environ.get(THREADS_ENV, '').strip()
    if not raw:
        return -1
    try:
        n_jobs = int(raw)
    except ValueError:
        raise ValueError("%s must be an integer worker count, got %r."
                         % (THREADS_ENV, raw))
    if n_jobs == 0:
        raise ValueError("%s must not be 0; use -1 for all cores."
                         % THREADS_ENV)
    return n_jobs


def keyed_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent random stream for ``(seed, *key)``.

    Streams depend only on the key, never on the order in which work is
    scheduled, so tiled or parallel callers see identical draws.
    """
    return np.random.default_rng(
        np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF,
                                *map(int, key)]))
