# pylint: disable=missing-function-docstring
# pylint: disable=missing-class-docstring

import json
import os
import shutil
import tempfile
import unittest

from unittest.mock import patch

from deltaalg.enums import Tier
from deltaalg.exactfield import HALF, Scalar
from deltaalg.exceptions import BadParameter, SchemaError, UnknownAlgebra
from deltaalg.suite import (
    CARTAN_HALF_ONE,
    KIND_ORDER,
    MANIFEST,
    SIMPLE_LIE_DIMS,
    AlgebraSpec,
    Check,
    SuiteConfig,
    build_algebra,
    emit_report,
    manifest_checks,
    run_check,
    run_suite,
    save_report,
    tier_algebras,
)


class BuildTestCase(unittest.TestCase):
    def test_build_algebra(self):
        self.assertEqual(8, build_algebra("W", {"n": 2}).dim)
        self.assertEqual(3, build_algebra("H2").dim)
        self.assertEqual(8, build_algebra("Qplus").dim)
        self.assertRaises(UnknownAlgebra, build_algebra, "E8")
        self.assertRaises(BadParameter, build_algebra, "W")
        self.assertRaises(BadParameter, build_algebra, "K3", {"n": 2})

    def test_spec(self):
        spec = AlgebraSpec.of("Mplus", n=1, m=1)
        self.assertEqual("Mplus(1,1)", str(spec))
        self.assertEqual("K3", str(AlgebraSpec.of("K3")))
        self.assertEqual(spec, AlgebraSpec.from_dict(spec.to_dict()))
        with self.assertRaises(SchemaError) as context:
            AlgebraSpec.from_dict({"params": {}}, "/algebras/3")
        self.assertEqual("/algebras/3", context.exception.pointer)


class ConfigTestCase(unittest.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_from_dict(self):
        config = SuiteConfig.from_dict(
            {
                "tier": "full",
                "seed": 7,
                "probe_deltas": ["1/2", 2],
                "algebras": [{"family": "K3"}],
            }
        )
        self.assertEqual(Tier.FULL, config.tier)
        self.assertEqual(7, config.seed)
        self.assertEqual((HALF, Scalar(2)), config.probe_deltas)
        self.assertEqual([AlgebraSpec.of("K3")], config.selected_algebras())

    def test_errors(self):
        self.assertRaises(SchemaError, SuiteConfig.from_dict, [])
        self.assertRaises(SchemaError, SuiteConfig.from_dict, {"colour": "red"})
        self.assertRaises(SchemaError, SuiteConfig.from_dict, {"seed": "0"})
        self.assertRaises(SchemaError, SuiteConfig.from_dict, {"workers": True})
        self.assertRaises(SchemaError, SuiteConfig.from_dict, {"algebras": {}})
        self.assertRaises(BadParameter, SuiteConfig.from_dict, {"tier": "huge"})
        with self.assertRaises(SchemaError) as context:
            SuiteConfig.from_dict({"probe_deltas": ["1/2", "half"]})
        self.assertEqual("/probe_deltas/1", context.exception.pointer)

    def test_from_file(self):
        path = SuiteConfig.default_path(self.temp_dir)
        self.assertEqual(".alg.json", os.path.basename(path))
        with open(path, "w", encoding="utf-8") as fle:
            json.dump({"seed": 3}, fle)
        self.assertEqual(3, SuiteConfig.from_file(path).seed)
        with open(path, "w", encoding="utf-8") as fle:
            fle.write("{")
        self.assertRaises(SchemaError, SuiteConfig.from_file, path)


class ManifestTestCase(unittest.TestCase):
    def test_tiers(self):
        fast = tier_algebras(Tier.FAST)
        full = tier_algebras(Tier.FULL)
        self.assertIn(AlgebraSpec.of("W", n=2), fast)
        self.assertNotIn(AlgebraSpec.of("W", n=3), fast)
        self.assertIn(AlgebraSpec.of("W", n=3), full)
        self.assertTrue(set(fast) <= set(full))

    def test_order(self):
        checks = manifest_checks(SuiteConfig())
        indices = [KIND_ORDER.index(check.kind) for check in checks]
        self.assertEqual(sorted(indices), indices)
        self.assertEqual("axioms/W(2)", checks[0].check_id)

    def test_default_kinds(self):
        config = SuiteConfig(algebras=(AlgebraSpec.of("H2"),))
        self.assertEqual(["axioms", "classify"], [check.kind for check in manifest_checks(config)])


class RunTestCase(unittest.TestCase):
    def test_library_error(self):
        record = run_check(Check("axioms", AlgebraSpec.of("W", n=9)), SuiteConfig())
        self.assertEqual("failed", record.status)
        self.assertTrue(record.witness.startswith("OutOfRange: "))
        self.assertEqual("W(9)", record.algebra)

    def test_skip_large(self):
        config = SuiteConfig(identity_limit=4)
        record = run_check(Check("axioms", AlgebraSpec.of("H2")), config)
        self.assertEqual("passed", record.status)
        with self.assertLogs(level="WARNING"):
            record = run_check(Check("axioms", AlgebraSpec.of("H3")), config)
        self.assertEqual("skipped", record.status)
        self.assertTrue(record.passed)

    def test_empty(self):
        report = run_suite(SuiteConfig(algebras=()))
        self.assertTrue(report.passed)
        self.assertEqual("PASSED", report.status)
        self.assertEqual(0, report.counts()["checks"])
        self.assertIsNone(report.first_witness)

    def test_failure(self):
        config = SuiteConfig(algebras=(AlgebraSpec.of("Dt", t="3"), AlgebraSpec.of("W", n=9)))
        report = run_suite(config)
        self.assertEqual("FAILED", report.status)
        self.assertTrue(report.first_witness.startswith("axioms/W(9): OutOfRange"))
        self.assertEqual(2, report.counts()["failed"])

    def test_expected_dims(self):
        config = SuiteConfig(probe_deltas=(HALF, Scalar(2)))
        options = (("modes", ("plain",)), ("plain_dims", SIMPLE_LIE_DIMS))
        record = run_check(Check("classify", AlgebraSpec.of("W", n=2), options), config)
        self.assertEqual("passed", record.status, record.witness)
        options = (("modes", ("plain",)), ("plain_dims", (("1/2", 2),)))
        record = run_check(Check("classify", AlgebraSpec.of("W", n=2), options), config)
        self.assertEqual("failed", record.status)
        self.assertEqual("delta=1/2 plain: dim 1 instead of 2", record.witness)

    def test_allowed_deltas(self):
        options = (("allowed", ("-1",)), ("modes", ("super",)))
        record = run_check(Check("scan", AlgebraSpec.of("K3"), options), SuiteConfig())
        self.assertEqual("failed", record.status)
        self.assertIn("unexpected exceptional delta", record.witness)
        for entry in MANIFEST:
            if "scan" in entry.kinds:
                self.assertEqual(CARTAN_HALF_ONE, dict(entry.options).get("allowed"), str(entry.algebra))

    def test_roots(self):
        check = Check("roots", AlgebraSpec.of("W", n=2))
        record = run_check(check, SuiteConfig())
        self.assertEqual("passed", record.status, record.witness)
        self.assertEqual(2, record.dims["zero_weight_dim"])
        self.assertEqual(6, record.dims["roots"])
        with patch("deltaalg.suite.w_weights", return_value={}):
            record = run_check(check, SuiteConfig())
        self.assertEqual("failed", record.status)
        self.assertEqual("weight (-1, 0) has dim 1 instead of 0", record.witness)

    def test_small(self):
        config = SuiteConfig(
            probe_deltas=(HALF, Scalar(2)),
            algebras=(AlgebraSpec.of("Dt", t="3"), AlgebraSpec.of("H2"), AlgebraSpec.of("M2")),
            workers=2,
        )
        report = run_suite(config)
        self.assertTrue(report.passed, report.first_witness)
        self.assertEqual(emit_report(report), emit_report(run_suite(config)))
        data = json.loads(emit_report(report))
        self.assertEqual("PASSED", data["status"])
        self.assertNotIn("seconds", data["records"][0])
        self.assertIn("seconds", json.loads(emit_report(report, timings=True))["records"][0])

    def test_fast_tier(self):
        report = run_suite(SuiteConfig())
        self.assertTrue(report.passed, report.first_witness)
        self.assertEqual(0, report.counts()["failed"])


class EmitTestCase(unittest.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        config = SuiteConfig(probe_deltas=(HALF,), algebras=(AlgebraSpec.of("H2"),))
        self.report = run_suite(config)

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_markdown(self):
        document = emit_report(self.report, "markdown")
        self.assertTrue(document.startswith("# Suite report\n"))
        self.assertIn("- status: PASSED", document)
        self.assertIn("| classify/H2 | passed | - |", document)
        self.assertRaises(BadParameter, emit_report, self.report, "xml")

    def test_save(self):
        path = os.path.join(self.temp_dir, "reports", "suite.json")
        save_report(self.report, path)
        with open(path, encoding="utf-8") as fle:
            self.assertEqual(emit_report(self.report), fle.read())
