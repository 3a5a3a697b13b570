# pylint: disable=missing-function-docstring
# pylint: disable=missing-class-docstring

import os
import shutil
import tempfile
import time
import unittest

from deltaalg.batch import run_jobs_sync
from deltaalg.contexts import ProfileContext, Stopwatch
from deltaalg.functions import (
    apply_derivation,
    grassmann_derivative,
    grassmann_product,
    koszul_sign,
    seeded_random,
    sha256_file,
    subsets,
)


class GrassmannFunctionsTestCase(unittest.TestCase):
    def test_subsets(self):
        self.assertEqual([(), (1,), (2,), (1, 2)], subsets(2))
        self.assertEqual(8, len(subsets(3)))

    def test_koszul_sign(self):
        self.assertEqual(1, koszul_sign((1,), (2,)))
        self.assertEqual(-1, koszul_sign((2,), (1,)))
        self.assertEqual(1, koszul_sign((2, 3), (1,)))

    def test_product(self):
        self.assertIsNone(grassmann_product((1,), (1, 2)))
        self.assertEqual((-1, (1, 2)), grassmann_product((2,), (1,)))
        self.assertEqual((1, ()), grassmann_product((), ()))

    def test_derivative(self):
        self.assertEqual((-1, (1,)), grassmann_derivative(2, (1, 2)))
        self.assertEqual((1, (2,)), grassmann_derivative(1, (1, 2)))
        self.assertIsNone(grassmann_derivative(1, (2,)))

    def test_apply_derivation(self):
        # xi1 * d/dxi2 sends xi2 to xi1 and kills xi1*xi2.
        self.assertEqual({(1,): 1}, apply_derivation({(1,): 1}, 2, {(2,): 1}))
        self.assertEqual({}, apply_derivation({(1,): 1}, 2, {(1, 2): 1}))
        self.assertEqual({(2,): 3}, apply_derivation({(): 1}, 1, {(1, 2): 3}))


class UtilitiesTestCase(unittest.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_seeded_random(self):
        self.assertEqual(seeded_random(0, "scan").random(), seeded_random(0, "scan").random())
        self.assertNotEqual(seeded_random(0, "scan").random(), seeded_random(0, "roots").random())
        self.assertNotEqual(seeded_random(0, "scan").random(), seeded_random(1, "scan").random())

    def test_sha256_file(self):
        filename = os.path.join(self.temp_dir, "abc.txt")
        with open(filename, "wb") as fle:
            fle.write(b"abc")
        self.assertEqual(
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
            sha256_file(filename),
        )

    def test_run_jobs(self):
        self.assertEqual([9, 1, 4], run_jobs_sync(lambda value: value * value, [3, 1, 2], 2))
        self.assertEqual([], run_jobs_sync(str, [], 4))
        self.assertEqual(["1"], run_jobs_sync(str, [1], 0))

    def test_stopwatch(self):
        with Stopwatch() as stopwatch:
            time.sleep(0.01)
        self.assertGreater(stopwatch.seconds, 0.0)

    def test_profile(self):
        filename = os.path.join(self.temp_dir, "alg.prof")
        with ProfileContext(filename):
            subsets(4)
        self.assertTrue(os.path.exists(filename))
