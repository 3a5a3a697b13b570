# pylint: disable=missing-function-docstring
# pylint: disable=missing-class-docstring

import os
import shutil
import tempfile
import unittest

from fractions import Fraction

from deltaalg.enums import Claims, Identity, Variety
from deltaalg.exactfield import HALF, ONE, ZERO
from deltaalg.exceptions import BadParameter, K10DataCorrupt, OutOfRange
from deltaalg.jordancons import (
    K10_TABLE,
    build_Dt,
    build_H_matrices,
    build_JGamma,
    build_JVf,
    build_K3,
    build_K10,
    build_M2,
    build_matrix_plus,
    build_osp,
    build_P,
    build_Q_plus,
    build_quasi_associative,
    build_jordan_algebras,
    check_bar_squares,
    grassmann_bracket,
    jgamma_index,
    matrix_superalgebra,
)
from deltaalg.store import save_algebra
from deltaalg.superalg import (
    center,
    check_identity_multilinear,
    check_super_variety,
    find_unit,
    is_associative,
    peirce_decompose,
    plus_functor,
)


def even_dim(algebra):
    return sum(1 for value in algebra.parity if not value)


class MatrixTestCase(unittest.TestCase):
    def test_matrix_superalgebra(self):
        algebra = matrix_superalgebra(1, 1)
        self.assertEqual(4, algebra.dim)
        self.assertEqual((0, 1, 1, 0), algebra.parity)
        self.assertIsNone(is_associative(algebra))
        self.assertEqual((ONE, ZERO, ZERO, ONE), algebra.unit)
        self.assertRaises(OutOfRange, matrix_superalgebra, 3, 2)

    def test_plus(self):
        algebra = build_matrix_plus(1, 1)
        self.assertEqual(4, algebra.dim)
        self.assertEqual(2, even_dim(algebra))
        self.assertEqual(2, algebra.meta.degree)
        self.assertTrue(check_super_variety(algebra, Variety.JORDAN_SUPER))
        self.assertRaises(OutOfRange, build_matrix_plus, 2, 2)

    def test_plus_odd_pair(self):
        algebra = plus_functor(matrix_superalgebra(1, 1))
        # e12 o e21 = (e12 e21 - e21 e12) / 2 since both factors are odd.
        self.assertEqual({0: HALF, 3: -HALF}, algebra.basis_product(1, 2))
        self.assertEqual({0: -HALF, 3: HALF}, algebra.basis_product(2, 1))
        self.assertEqual({1: HALF}, algebra.basis_product(0, 1))

    def test_subalgebras(self):
        for algebra in (build_Q_plus(2), build_P(2)):
            with self.subTest(algebra=algebra.name):
                self.assertEqual(8, algebra.dim)
                self.assertEqual(Claims.JORDAN_SUPER, algebra.claims)
                self.assertIsNotNone(algebra.unit)
                self.assertTrue(check_super_variety(algebra, Variety.JORDAN_SUPER))
        self.assertRaises(OutOfRange, build_Q_plus, 3)
        self.assertRaises(OutOfRange, build_P, 3)

    def test_osp(self):
        small = build_osp(1, 1)
        self.assertEqual((2, 2), (even_dim(small), small.dim - even_dim(small)))
        self.assertTrue(check_super_variety(small, Variety.JORDAN_SUPER))
        self.assertEqual(8, build_osp(2, 1).dim)
        self.assertRaises(OutOfRange, build_osp, 3, 1)


class SmallJordanTestCase(unittest.TestCase):
    def test_superform(self):
        algebra = build_JVf(1, 2)
        self.assertEqual(4, algebra.dim)
        self.assertEqual(["1", "v1", "x1", "y1"], algebra.meta.labels)
        self.assertTrue(check_super_variety(algebra, Variety.JORDAN_SUPER))
        for idempotent in algebra.meta.idempotents:
            decomposition = peirce_decompose(algebra, algebra.element(idempotent))
            self.assertEqual((1, 2, 1), decomposition.dims)
        self.assertRaises(OutOfRange, build_JVf, 1, 1)
        self.assertRaises(OutOfRange, build_JVf, 3, 4)

    def test_dt(self):
        algebra = build_Dt(Fraction(1, 2))
        self.assertEqual(["e1", "e2", "x", "y"], algebra.meta.labels)
        self.assertEqual((ONE, ONE, ZERO, ZERO), algebra.unit)
        self.assertTrue(check_super_variety(algebra, Variety.JORDAN_SUPER))
        decomposition = peirce_decompose(algebra, algebra.basis_element(0))
        self.assertEqual((1, 2, 1), decomposition.dims)
        self.assertEqual("D(-1)", build_Dt(-1).name)
        self.assertRaises(BadParameter, build_Dt, 0)

    def test_k3(self):
        algebra = build_K3()
        self.assertIsNone(algebra.unit)
        self.assertIsNone(find_unit(algebra))
        self.assertTrue(check_super_variety(algebra, Variety.JORDAN_SUPER))
        decomposition = peirce_decompose(algebra, algebra.basis_element(0))
        self.assertEqual((0, 2, 1), decomposition.dims)


class K10TestCase(unittest.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_packaged(self):
        algebra = build_K10()
        self.assertEqual(10, algebra.dim)
        self.assertIsNotNone(algebra.unit)

    def test_checksum_mismatch(self):
        path = os.path.join(self.temp_dir, "k10.json")
        shutil.copyfile(K10_TABLE, path)
        with open(os.path.join(self.temp_dir, "k10.sha256"), "w", encoding="utf-8") as fle:
            fle.write("0" * 64)
        self.assertRaises(K10DataCorrupt, build_K10, path)

    def test_wrong_algebra(self):
        path = os.path.join(self.temp_dir, "k3.json")
        save_algebra(build_K3(), path)
        self.assertRaises(K10DataCorrupt, build_K10, path)
        self.assertRaises(K10DataCorrupt, build_K10, os.path.join(self.temp_dir, "missing.json"))


class KantorDoubleTestCase(unittest.TestCase):
    def test_grassmann_bracket(self):
        self.assertEqual({(): -ONE}, grassmann_bracket(2, {(1,): ONE}, {(1,): ONE}))
        self.assertEqual({}, grassmann_bracket(2, {(1,): ONE}, {(2,): ONE}))
        self.assertEqual({(2,): -ONE}, grassmann_bracket(2, {(1,): ONE}, {(1, 2): ONE}))

    def test_jgamma(self):
        algebra = build_JGamma(2)
        self.assertEqual(8, algebra.dim)
        self.assertEqual(7, jgamma_index(2, (1, 2), bar=True))
        self.assertEqual("bar(e1*e2)", algebra.label(7))
        self.assertTrue(check_super_variety(algebra, Variety.JORDAN_SUPER))
        self.assertEqual(16, build_JGamma(3).dim)
        self.assertRaises(OutOfRange, build_JGamma, 4)

    def test_bar_squares(self):
        self.assertEqual([], check_bar_squares(2))
        self.assertEqual([], check_bar_squares(3))


class OrdinaryTestCase(unittest.TestCase):
    def test_symmetric_matrices(self):
        algebra = build_H_matrices(2)
        self.assertEqual(3, algebra.dim)
        self.assertTrue(algebra.is_purely_even)
        self.assertTrue(check_identity_multilinear(algebra, Identity.JORDAN))
        self.assertEqual(1, center(algebra).dim)
        self.assertEqual(6, build_H_matrices(3).dim)
        self.assertRaises(OutOfRange, build_H_matrices, 4)

    def test_m2(self):
        algebra = build_M2()
        self.assertEqual(1, center(algebra).dim)
        self.assertEqual(Claims.FLEXIBLE | Claims.NC_JORDAN, algebra.claims)
        self.assertTrue(check_identity_multilinear(algebra, Identity.NC_JORDAN))

    def test_quasi_associative(self):
        algebra = build_quasi_associative(Fraction(1, 3))
        self.assertTrue(check_identity_multilinear(algebra, Identity.FLEXIBILITY))
        self.assertTrue(check_identity_multilinear(algebra, Identity.NC_JORDAN))
        self.assertFalse(check_identity_multilinear(algebra, Identity.COMMUTATIVITY))
        symmetric = build_quasi_associative(HALF)
        self.assertTrue(check_identity_multilinear(symmetric, Identity.COMMUTATIVITY))

    def test_list(self):
        names = [algebra.name for algebra in build_jordan_algebras()]
        self.assertEqual(["H2", "H3", "M2", "J(2,0)", "H2+H2"], names)
