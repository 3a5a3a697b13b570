# pylint: disable=missing-function-docstring
# pylint: disable=missing-class-docstring

import json
import os
import shutil
import tempfile
import unittest

from deltaalg.exceptions import GradingError, SchemaError
from deltaalg.jordancons import build_Dt
from deltaalg.store import (
    algebra_to_dict,
    diff_algebras,
    dumps_algebra,
    load_algebra,
    loads_algebra,
    save_algebra,
)

from .functions import odd_heisenberg, two_dim_lie


class StoreTestCase(unittest.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_save_load(self):
        algebra = build_Dt(-2)
        path = os.path.join(self.temp_dir, "nested", "dt.json")
        save_algebra(algebra, path, verify=True)
        loaded = load_algebra(path)
        self.assertEqual(algebra, loaded)
        self.assertEqual(algebra.meta.labels, loaded.meta.labels)
        self.assertEqual(algebra.meta.idempotents, loaded.meta.idempotents)
        self.assertEqual(algebra.claims, loaded.claims)
        self.assertEqual([], diff_algebras(algebra, loaded))

    def test_format(self):
        data = json.loads(dumps_algebra(odd_heisenberg()))
        self.assertEqual([[1, 1, [[0, "1"]]]], data["table"])
        self.assertEqual([0, 1], data["parity"])
        self.assertIsNone(data["unit"])
        self.assertFalse(data["meta"]["claims_lie_super"])
        self.assertEqual(["h", "x"], data["meta"]["labels"])

    def test_grading_error(self):
        data = algebra_to_dict(odd_heisenberg())
        data["parity"] = [1, 1]
        self.assertRaises(GradingError, loads_algebra, json.dumps(data))

    def test_schema_errors(self):
        data = algebra_to_dict(two_dim_lie())
        data["table"][0][2][0][1] = "1/0"
        with self.assertRaises(SchemaError) as context:
            loads_algebra(json.dumps(data))
        self.assertEqual("/table/0/2/0/1", context.exception.pointer)

        data = algebra_to_dict(two_dim_lie())
        data["table"][0][2][0][1] = 1
        self.assertRaises(SchemaError, loads_algebra, json.dumps(data))

        data = algebra_to_dict(two_dim_lie())
        data["parity"] = [0]
        self.assertRaises(SchemaError, loads_algebra, json.dumps(data))

        data = algebra_to_dict(two_dim_lie())
        del data["table"]
        self.assertRaises(SchemaError, loads_algebra, json.dumps(data))

        data = algebra_to_dict(two_dim_lie())
        data["table"].append(data["table"][0])
        self.assertRaises(SchemaError, loads_algebra, json.dumps(data))

        self.assertRaises(SchemaError, loads_algebra, "{")
        self.assertRaises(SchemaError, loads_algebra, "[]")

    def test_diff(self):
        left = two_dim_lie()
        data = algebra_to_dict(left)
        data["table"][0][2][0][1] = "2"
        right = loads_algebra(json.dumps(data))
        differences = diff_algebras(left, right)
        self.assertEqual(1, len(differences))
        self.assertEqual("change", differences[0][0])
