# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import importlib.resources
import shutil
import tempfile
import unittest


class TestBase(unittest.TestCase):
    """Shared fixture plumbing for the panolux test-suite.

    Subclasses set ``package`` to the dotted name of the package that
    holds a ``data`` directory of fixtures.
    """
    package = None

    def setUp(self):
        super().setUp()
        self.temp_dir = tempfile.mkdtemp(prefix='panolux-test-')

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)
        super().tearDown()

    def get_data_path(self, filename):
        if self.package is None:
            raise ValueError('`package` must be set on %s to locate test data.'
                             % type(self).__name__)
        return str(importlib.resources.files(self.package) / 'data'
                   / filename)

    def read_data_text(self, filename):
        with open(self.get_data_path(filename), encoding='utf-8') as fh:
            return fh.read()

    def temp_path(self, filename):
        return f'{self.temp_dir}/{filename}'
