# pylint: disable=missing-function-docstring
# pylint: disable=missing-class-docstring

import unittest

from fractions import Fraction

from deltaalg.exactfield import (
    HALF,
    I,
    ONE,
    ZERO,
    Poly,
    Scalar,
    common_rational_roots,
    format_scalar,
    nonlinear_factors,
    parse_scalar,
    poly_eval,
    poly_gcd,
    poly_rational_roots,
)
from deltaalg.exceptions import DivisionByZero, NonRationalCoefficients


class ScalarTestCase(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(Scalar(Fraction(1, 2)), parse_scalar("1/2"))
        self.assertEqual(Scalar(-3), parse_scalar("-3"))
        self.assertEqual(Scalar(1, 2), parse_scalar("1+2i"))
        self.assertEqual(Scalar(Fraction(-1, 3), Fraction(-5, 7)), parse_scalar("-1/3-5/7i"))
        self.assertEqual(I, parse_scalar("i"))
        self.assertEqual(-I, parse_scalar("-i"))
        self.assertEqual(Scalar(0, 4), parse_scalar("+4i"))
        self.assertEqual(Scalar(Fraction(1, 2)), parse_scalar("2/4"))

    def test_parse_errors(self):
        for text in ("", "abc", "1.5", "1/2/3", "i2"):
            with self.subTest(text=text):
                self.assertRaises(ValueError, parse_scalar, text)
        self.assertRaises(DivisionByZero, parse_scalar, "1/0")

    def test_format(self):
        self.assertEqual("1/2", format_scalar(HALF))
        self.assertEqual("0", format_scalar(ZERO))
        self.assertEqual("1-1/2i", format_scalar(Scalar(1, Fraction(-1, 2))))
        self.assertEqual("0+1i", format_scalar(I))
        for text in ("7", "-2/9", "3/4+5i", "0-1/3i"):
            self.assertEqual(text, format_scalar(parse_scalar(text)))

    def test_arithmetic(self):
        self.assertEqual(Scalar(-1), I * I)
        self.assertEqual(ONE, HALF + HALF)
        self.assertEqual(Scalar(Fraction(1, 2), Fraction(-1, 2)), 1 / Scalar(1, 1))
        self.assertEqual(Scalar(Fraction(3, 2)), 1 + HALF)
        self.assertEqual(Scalar(Fraction(-1, 2)), HALF - 1)
        self.assertEqual(Scalar(2, -3), Scalar(2, 3).conjugate())
        self.assertTrue(Scalar(2) == 2)
        self.assertFalse(Scalar(2, 1) == 2)
        self.assertEqual(hash(Scalar(2)), hash(parse_scalar("4/2")))
        self.assertRaises(DivisionByZero, ZERO.inverse)
        self.assertRaises(DivisionByZero, lambda: ONE / 0)

    def test_coerce(self):
        self.assertEqual(HALF, Scalar.coerce(Fraction(1, 2)))
        self.assertEqual(HALF, Scalar.coerce("1/2"))
        self.assertEqual(Scalar(3), Scalar.coerce(3))
        self.assertRaises(TypeError, Scalar.coerce, 0.5)


class PolyTestCase(unittest.TestCase):
    def test_degree(self):
        self.assertEqual(Poly.ZERO_DEGREE, Poly().degree)
        self.assertEqual(Poly.ZERO_DEGREE, Poly((0, 0)).degree)
        self.assertEqual(2, Poly((1, 0, 3)).degree)

    def test_arithmetic(self):
        left = Poly((-1, 1))
        right = Poly((1, 1))
        self.assertEqual(Poly((-1, 0, 1)), left * right)
        self.assertEqual(Poly((0, 2)), left + right)
        self.assertEqual(Poly((-2,)), left - right)
        self.assertEqual(Scalar(8), (left * right)(3))
        self.assertEqual(Scalar(Fraction(-3, 4)), poly_eval(left * right, HALF))
        self.assertEqual(Scalar(-2), poly_eval(Poly((-1, 0, 1)), I))
        self.assertEqual(ZERO, poly_eval(Poly(), Scalar(5)))

    def test_rational_roots(self):
        self.assertEqual({ONE, Scalar(-1)}, poly_rational_roots(Poly((-1, 1)) * Poly((1, 1))))
        # (2 delta - 1)(delta + 1)(delta^2 + 1)
        product = Poly((-1, 2)) * Poly((1, 1)) * Poly((1, 0, 1))
        self.assertEqual({HALF, Scalar(-1)}, poly_rational_roots(product))
        self.assertEqual([Poly((1, 0, 1))], nonlinear_factors(product))
        self.assertEqual(set(), poly_rational_roots(Poly((5,))))
        self.assertRaises(NonRationalCoefficients, poly_rational_roots, Poly((I, ONE)))

    def test_common_rational_roots(self):
        # (delta - 1/2)(delta - i) has the single rational root 1/2.
        polynomial = Poly((-HALF, ONE)) * Poly((-I, ONE))
        self.assertEqual({HALF}, common_rational_roots(polynomial))
        self.assertEqual(set(), common_rational_roots(Poly((-I, ONE))))

    def test_gcd(self):
        left = Poly((-1, 1)) * Poly((1, 1))
        right = Poly((-1, 1)) * Poly((2, 1))
        gcd = poly_gcd([left, right])
        self.assertEqual(1, gcd.degree)
        self.assertEqual(ZERO, gcd(1))
        self.assertEqual(Poly.ZERO_DEGREE, poly_gcd([Poly(), Poly()]).degree)
