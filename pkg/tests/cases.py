# pylint: disable=missing-function-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=attribute-defined-outside-init

import json
import logging
import os
import shutil
import tempfile
import unittest

from click.testing import CliRunner

from deltaalg import cli
from deltaalg.jordancons import build_Dt
from deltaalg.liecons import build_W
from deltaalg.store import save_algebra

from .functions import two_dim_lie


class AlgebraFilesCase(unittest.TestCase):
    """Saves a few algebras in a temporary directory for the commands to load."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        logging.info(self.temp_dir)
        self.paths = {}
        for key, algebra in (("W", build_W(2)), ("Dt", build_Dt(3)), ("lie2", two_dim_lie())):
            self.paths[key] = os.path.join(self.temp_dir, f"{key}.json")
            save_algebra(algebra, self.paths[key])
        self.runner = CliRunner()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def invoke(self, *args, exit_code=0):
        result = self.runner.invoke(cli.cli, list(args), obj={})
        self.assertEqual(exit_code, result.exit_code, result.output)
        return result

    def invoke_json(self, *args, exit_code=0):
        return json.loads(self.invoke(*args, exit_code=exit_code).output)
