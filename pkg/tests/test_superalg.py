# pylint: disable=missing-function-docstring
# pylint: disable=missing-class-docstring

import random
import unittest

from deltaalg.enums import Identity, Variety
from deltaalg.exactfield import HALF, ONE, ZERO, Scalar
from deltaalg.exceptions import (
    DegenerateInput,
    DimensionMismatch,
    GradedInput,
    GradingError,
    NotClosed,
    NotIdempotent,
    NotUnital,
    ParityMismatch,
    TooLarge,
    ZeroVector,
)
from deltaalg.jordancons import build_K3
from deltaalg.linalg import Subspace, matrix_rows
from deltaalg.liecons import build_W
from deltaalg.superalg import (
    SuperAlgebra,
    ad_operator,
    center,
    check_identity_multilinear,
    check_super_variety,
    combination_label,
    direct_sum,
    find_unit,
    grassmann,
    grassmann_envelope,
    homogeneous_components,
    ideal_closure,
    is_associative,
    is_supercommutative,
    left_mult_operator,
    minus_functor,
    multiply,
    mutate,
    peirce_decompose,
    plus_functor,
    product_span,
    restrict,
    right_mult_operator,
    simplicity_probe,
    subalgebra_closure,
)

from .functions import abelian_algebra, field_sum, odd_heisenberg, two_dim_lie


class GrassmannTestCase(unittest.TestCase):
    def test_dims(self):
        self.assertEqual(1, grassmann(0).dim)
        self.assertTrue(grassmann(0).is_purely_even)
        self.assertEqual(8, grassmann(3).dim)
        algebra = grassmann(2)
        self.assertEqual(4, algebra.dim)
        self.assertEqual((0, 1, 1, 0), algebra.parity)
        self.assertEqual(["1", "e1", "e2", "e1*e2"], algebra.meta.labels)
        self.assertRaises(TooLarge, grassmann, 13)

    def test_relations(self):
        algebra = grassmann(2)
        e1, e2 = algebra.basis_element(1), algebra.basis_element(2)
        self.assertFalse(multiply(algebra, e1, e1))
        self.assertEqual(algebra.basis_element(3), multiply(algebra, e1, e2))
        self.assertEqual(algebra.element([0, 0, 0, -1]), multiply(algebra, e2, e1))
        self.assertRaises(DimensionMismatch, multiply, algebra, e1, grassmann(1).basis_element(0))

    def test_structure(self):
        algebra = grassmann(2)
        self.assertIsNone(is_supercommutative(algebra))
        self.assertIsNone(is_associative(algebra))
        self.assertEqual(algebra.element([1, 0, 0, 0]), find_unit(algebra))
        self.assertEqual({}, minus_functor(algebra).table)
        self.assertEqual(algebra.table, plus_functor(algebra).table)
        even, odd = homogeneous_components(algebra, Subspace.whole(4))
        self.assertEqual((2, 2), (even.dim, odd.dim))

    def test_super_variety(self):
        algebra = grassmann(2)
        self.assertTrue(check_super_variety(algebra, Variety.JORDAN_SUPER))
        self.assertFalse(check_super_variety(algebra, Variety.LIE_SUPER))
        self.assertRaises(GradedInput, check_identity_multilinear, algebra, Identity.COMMUTATIVITY)

    def test_envelope(self):
        envelope = grassmann_envelope(grassmann(1), 1)
        self.assertEqual(2, envelope.dim)
        self.assertTrue(envelope.is_purely_even)
        self.assertTrue(check_identity_multilinear(envelope, Identity.COMMUTATIVITY))
        self.assertEqual(2 * 4, grassmann_envelope(grassmann(2), 2).dim)
        self.assertRaises(TooLarge, grassmann_envelope, grassmann(1), 7)


class SuperAlgebraTestCase(unittest.TestCase):
    def test_grading_error(self):
        with self.assertRaises(GradingError):
            SuperAlgebra("bad", [0, 1], {(0, 0): [(1, ONE)]})

    def test_unit_errors(self):
        with self.assertRaises(NotUnital):
            SuperAlgebra("bad", [0, 0], {(0, 0): [(0, ONE)]}, [ONE, ZERO])
        with self.assertRaises(DimensionMismatch):
            SuperAlgebra("bad", [0], {(0, 0): [(0, ONE)]}, [ONE, ZERO])

    def test_merged_entries(self):
        algebra = SuperAlgebra("sum", [0], {(0, 0): [(0, HALF), (0, HALF)]})
        self.assertEqual({(0, 0): ((0, ONE),)}, algebra.table)
        cancelled = SuperAlgebra("zero", [0], {(0, 0): [(0, ONE), (0, -ONE)]})
        self.assertEqual({}, cancelled.table)

    def test_identities(self):
        lie = two_dim_lie()
        self.assertTrue(check_identity_multilinear(lie, Identity.ANTICOMMUTATIVITY))
        self.assertTrue(check_identity_multilinear(lie, Identity.JACOBI))
        result = check_identity_multilinear(lie, Identity.COMMUTATIVITY)
        self.assertFalse(result)
        self.assertEqual((0, 1), result.witness)
        self.assertEqual("commutativity: fail at (x=e0, y=e1)", result.describe(lie))
        self.assertTrue(check_super_variety(lie, Variety.LIE_SUPER))
        self.assertFalse(check_super_variety(lie, Variety.JORDAN_SUPER))
        self.assertEqual((0, 1), is_supercommutative(lie))
        self.assertEqual((0, 0, 1), is_associative(lie))

    def test_odd_lie(self):
        algebra = odd_heisenberg()
        self.assertTrue(check_super_variety(algebra, Variety.LIE_SUPER))
        self.assertFalse(check_super_variety(algebra, Variety.JORDAN_SUPER))

    def test_mutation(self):
        lie = two_dim_lie()
        mutated = mutate(lie, random.Random(0))
        self.assertNotEqual(lie.table, mutated.table)
        self.assertFalse(check_super_variety(mutated, Variety.LIE_SUPER))
        self.assertRaises(DegenerateInput, mutate, abelian_algebra(2), random.Random(0))


class ClosureTestCase(unittest.TestCase):
    def test_subalgebra_closure(self):
        algebra = grassmann(2)
        self.assertEqual(1, subalgebra_closure(algebra, [algebra.basis_element(1)]).dim)
        generated = subalgebra_closure(algebra, [algebra.basis_element(1), algebra.basis_element(2)])
        self.assertEqual(3, generated.dim)
        self.assertEqual(1, subalgebra_closure(algebra, [algebra.element(algebra.unit)]).dim)

    def assert_closed(self, algebra, space):
        for u in space.sparse_basis():
            for v in space.sparse_basis():
                product = algebra.product(u, v)
                self.assertTrue(space.contains(tuple(product.get(i, ZERO) for i in range(algebra.dim))))

    def test_subalgebra_closure_witt(self):
        witt = build_W(2)
        # xi1*d1 - xi2*d2 spans an abelian subalgebra.
        torus = subalgebra_closure(witt, [{2: ONE, 5: -ONE}])
        self.assertEqual(1, torus.dim)
        self.assert_closed(witt, torus)
        for generators in (
            [{0: Scalar(2), 3: Scalar(-2)}, {5: Scalar(-2)}],
            [{0: -ONE, 3: ONE}, {6: -ONE}],
        ):
            with self.subTest(generators=generators):
                generated = subalgebra_closure(witt, generators)
                self.assert_closed(witt, generated)
        generated = subalgebra_closure(build_W(3), [{4: ONE}, {6: Scalar(-2), 18: ONE}])
        self.assert_closed(build_W(3), generated)

    def test_subalgebra_closure_random(self):
        rng = random.Random(3)
        witt = build_W(2)
        for _ in range(20):
            generators = [
                {index: Scalar(rng.choice((-2, -1, 1, 2))) for index in rng.sample(range(witt.dim), 2)}
                for _ in range(2)
            ]
            generated = subalgebra_closure(witt, generators)
            self.assert_closed(witt, generated)
            for generator in generators:
                self.assertTrue(generated.contains(tuple(generator.get(i, ZERO) for i in range(witt.dim))))

    def test_ideal_closure(self):
        algebra = grassmann(2)
        self.assertEqual(2, ideal_closure(algebra, algebra.basis_element(1)).dim)
        self.assertEqual(4, ideal_closure(algebra, algebra.basis_element(0)).dim)
        self.assertRaises(ZeroVector, ideal_closure, algebra, algebra.element([0, 0, 0, 0]))

    def test_ideal_closure_simple(self):
        kaplansky = build_K3()
        for index in range(kaplansky.dim):
            self.assertEqual(3, ideal_closure(kaplansky, kaplansky.basis_element(index)).dim)
        self.assertEqual(3, ideal_closure(kaplansky, kaplansky.element([1, 2, -1])).dim)
        pair = direct_sum(kaplansky, kaplansky)
        self.assertEqual(3, ideal_closure(pair, pair.basis_element(1)).dim)

    def test_simplicity_probe(self):
        probe = simplicity_probe(grassmann(2))
        self.assertTrue(probe.found_ideal)
        self.assertEqual(2, probe.ideal.dim)
        self.assertTrue(simplicity_probe(two_dim_lie()).found_ideal)
        self.assertFalse(simplicity_probe(grassmann(0)).found_ideal)
        self.assertTrue(simplicity_probe(field_sum()).found_ideal)

    def test_product_span(self):
        self.assertEqual(4, product_span(grassmann(2), Subspace.whole(4)).dim)
        self.assertEqual(1, product_span(two_dim_lie(), Subspace.whole(2)).dim)
        self.assertEqual(0, product_span(abelian_algebra(3), Subspace.whole(3)).dim)


class StructureTestCase(unittest.TestCase):
    def test_peirce(self):
        algebra = field_sum()
        decomposition = peirce_decompose(algebra, algebra.basis_element(0))
        self.assertEqual((1, 0, 1), decomposition.dims)
        self.assertTrue(decomposition.p1.contains((ONE, ZERO)))
        self.assertRaises(NotIdempotent, peirce_decompose, algebra, algebra.element([2, 0]))

    def test_center(self):
        self.assertEqual(2, center(field_sum()).dim)
        self.assertEqual(3, center(abelian_algebra(3)).dim)
        grassmann_center = center(grassmann(2))
        self.assertEqual(Subspace.span([(ONE, ZERO, ZERO, ZERO), (ZERO, ZERO, ZERO, ONE)], 4), grassmann_center)

    def test_restrict(self):
        algebra = grassmann(2)
        even = Subspace.span([(ONE, ZERO, ZERO, ZERO), (ZERO, ZERO, ZERO, ONE)], 4)
        restricted = restrict(algebra, even, "even")
        self.assertEqual(2, restricted.dim)
        self.assertEqual((ONE, ZERO), restricted.unit)
        odd = Subspace.span([(ZERO, ONE, ZERO, ZERO), (ZERO, ZERO, ONE, ZERO)], 4)
        self.assertRaises(NotClosed, restrict, algebra, odd, "odd")
        mixed = Subspace.span([(ONE, ONE, ZERO, ZERO)], 4)
        self.assertRaises(ParityMismatch, restrict, algebra, mixed, "mixed")

    def test_direct_sum(self):
        algebra = direct_sum(grassmann(1), grassmann(1))
        self.assertEqual(4, algebra.dim)
        self.assertEqual((ONE, ZERO, ONE, ZERO), algebra.unit)
        self.assertEqual(["1", "e1", "1'", "e1'"], algebra.meta.labels)

    def test_combination_label(self):
        labels = ["a", "b", "c"]
        self.assertEqual("a-1/2*c", combination_label(labels, {0: ONE, 2: Scalar(-1) * HALF}))
        self.assertEqual("-b", combination_label(labels, {1: -ONE}))
        self.assertEqual("0", combination_label(labels, {}))

    def test_operators(self):
        algebra = two_dim_lie()
        e0 = algebra.basis_element(0)
        e1 = algebra.basis_element(1)
        self.assertEqual([(ZERO, ZERO), (ZERO, ONE)], matrix_rows(left_mult_operator(algebra, e0)))
        self.assertEqual([(ZERO, ZERO), (ZERO, -ONE)], matrix_rows(right_mult_operator(algebra, e0)))
        self.assertEqual([(ZERO, ZERO), (-ONE, ZERO)], matrix_rows(ad_operator(algebra, e1)))
        self.assertRaises(DimensionMismatch, left_mult_operator, algebra, grassmann(2).basis_element(0))
