# pylint: disable=missing-function-docstring
# pylint: disable=missing-class-docstring

import unittest

from deltaalg.enums import Claims, Variety
from deltaalg.exactfield import ONE, ZERO, Scalar
from deltaalg.exceptions import BadParameter, EqualBlocks, OutOfRange
from deltaalg.liecons import (
    bracket,
    build_H,
    build_Htilde,
    build_S,
    build_Stilde,
    build_sl,
    build_W,
    cartan_and_roots,
    even_action_probe,
    root_display,
    s_subspace,
    s_to_epsilon,
    w_basis,
    w_grading_violation,
    w_weights,
)
from deltaalg.superalg import SuperAlgebra, check_super_variety

from .functions import slow_tests_enabled


def weight(*values):
    return tuple(Scalar(value) for value in values)


class WittTestCase(unittest.TestCase):
    def test_basis(self):
        basis = w_basis(2)
        self.assertEqual(8, len(basis))
        self.assertEqual("d1", basis[0].label)
        self.assertEqual("xi1*xi2*d2", basis[-1].label)
        self.assertEqual([1, 1, 0, 0, 0, 0, 1, 1], [element.parity for element in basis])
        self.assertEqual([-1, -1, 0, 0, 0, 0, 1, 1], [element.degree for element in basis])

    def test_bracket(self):
        # [d1, xi1*d2] = d2
        derivation = bracket(2, {1: {(): ONE}}, 1, {2: {(1,): ONE}}, 0)
        self.assertEqual({2: {(): ONE}}, derivation)
        # Odd derivations anticommute: [d1, d2] = 0
        self.assertEqual({}, bracket(2, {1: {(): ONE}}, 1, {2: {(): ONE}}, 1))

    def test_build(self):
        algebra = build_W(2)
        self.assertEqual(8, algebra.dim)
        self.assertEqual(Claims.LIE_SUPER, algebra.claims)
        self.assertIsNone(w_grading_violation(algebra))
        self.assertTrue(check_super_variety(algebra, Variety.LIE_SUPER))
        self.assertEqual(24, build_W(3).dim)
        self.assertRaises(OutOfRange, build_W, 1)
        self.assertRaises(OutOfRange, build_W, 6)

    def test_roots(self):
        decomposition = cartan_and_roots(build_W(2), "W")
        expected = {
            weight(1, 0),
            weight(-1, 0),
            weight(0, 1),
            weight(0, -1),
            weight(1, -1),
            weight(-1, 1),
        }
        self.assertEqual(expected, decomposition.nonzero_weights())
        self.assertEqual(2, decomposition.zero_weight_dim())
        self.assertEqual(8, sum(decomposition.dims.values()))
        self.assertEqual(w_weights(2), decomposition.dims)
        self.assertEqual(2, w_weights(2)[weight(0, 0)])

    def test_roots_errors(self):
        self.assertRaises(BadParameter, cartan_and_roots, build_W(2), "X")
        self.assertRaises(BadParameter, cartan_and_roots, build_sl(2, 1), "W")


class SpecialTestCase(unittest.TestCase):
    def test_build(self):
        algebra = build_S(3)
        self.assertEqual(17, algebra.dim)
        self.assertTrue(check_super_variety(algebra, Variety.LIE_SUPER))
        self.assertRaises(OutOfRange, build_S, 2)

    @unittest.skipUnless(slow_tests_enabled(), "Set ALG_SLOW_TESTS=1 to build Stilde(4).")
    def test_build_deformed(self):
        algebra = build_Stilde(4)
        self.assertEqual(s_subspace(4).dim, algebra.dim)
        self.assertTrue(check_super_variety(algebra, Variety.LIE_SUPER))
        self.assertRaises(OutOfRange, build_Stilde, 3)

    def test_roots(self):
        decomposition = cartan_and_roots(build_S(3), "S")
        self.assertEqual(17, sum(decomposition.dims.values()))
        for root in decomposition.nonzero_weights():
            self.assertEqual(ZERO, sum(root, ZERO))
        self.assertTrue(decomposition.nonzero_weights() <= root_display("S", 3))

    def test_s_to_epsilon(self):
        # c = (2/3, -1/3, -1/3) has differences (1, 0).
        self.assertEqual(
            (Scalar(2) / 3, Scalar(-1) / 3, Scalar(-1) / 3), s_to_epsilon(weight(1, 0))
        )


class HamiltonianTestCase(unittest.TestCase):
    def test_build(self):
        algebra = build_H(4)
        self.assertEqual(14, algebra.dim)
        self.assertTrue(check_super_variety(algebra, Variety.LIE_SUPER))
        self.assertRaises(OutOfRange, build_H, 3)

    def test_build_full(self):
        algebra = build_Htilde(4)
        self.assertEqual(15, algebra.dim)
        self.assertTrue(check_super_variety(algebra, Variety.LIE_SUPER))
        self.assertRaises(OutOfRange, build_Htilde, 6)

    @unittest.skipUnless(slow_tests_enabled(), "Set ALG_SLOW_TESTS=1 to build H(5).")
    def test_build_large(self):
        self.assertEqual(30, build_H(5).dim)


class SpecialLinearTestCase(unittest.TestCase):
    def test_build(self):
        algebra = build_sl(2, 1)
        self.assertEqual(8, algebra.dim)
        self.assertEqual(4, sum(1 for value in algebra.parity if value))
        self.assertTrue(check_super_variety(algebra, Variety.LIE_SUPER))
        self.assertRaises(EqualBlocks, build_sl, 1, 1)
        self.assertRaises(OutOfRange, build_sl, 3, 2)


class EvenActionTestCase(unittest.TestCase):
    def test_probe(self):
        # h acts on x only, so span{x} is stable.
        algebra = SuperAlgebra("split", [0, 1, 1], {(0, 1): [(1, ONE)]})
        stable = even_action_probe(algebra)
        self.assertIsNotNone(stable)
        self.assertEqual(1, stable.dim)

    def test_graded_pieces(self):
        # The even part of W(2) preserves span{d1, d2}.
        self.assertIsNotNone(even_action_probe(build_W(2)))
