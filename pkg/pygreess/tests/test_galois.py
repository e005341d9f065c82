
import itertools
import os
import random
import tempfile
import unittest

from bitarray import frozenbitarray

from pygreess.boolmat import BooleanMatrix, FactorSet
from pygreess.galois import (
    FormalConcept, attribute_concept, concept_covers, down, enumerate_concepts, format_concepts, interval,
    interval_concepts, interval_contained, is_concept, iter_concepts, load_concepts, object_concept, parse_concepts,
    save_concepts, up)
from pygreess.exception import ConceptLimitExceeded, EmptyInterval, InvalidIndex, MatrixFormatError
from pygreess.util import bits_from_indices
from pygreess.tests import fixtures


class TestOperators(unittest.TestCase):

    def setUp(self):
        self.m = fixtures.matrix(fixtures.EXAMPLE)

    def test_up(self):
        self.assertEqual(up(self.m, {0, 4, 5}), {0, 1})
        self.assertEqual(up(self.m, {0}), {0, 1, 3})
        self.assertEqual(up(self.m, set()), {0, 1, 2, 3, 4})

    def test_down(self):
        self.assertEqual(down(self.m, {0, 1}), {0, 4, 5})
        self.assertEqual(down(self.m, {3}), {0, 1, 3, 4})
        self.assertEqual(down(self.m, set()), {0, 1, 2, 3, 4, 5})

    def test_invalid_index(self):
        with self.assertRaises(InvalidIndex):
            up(self.m, {6})
        with self.assertRaises(InvalidIndex):
            down(self.m, {5})

    def test_object_concept(self):
        self.assertEqual(object_concept(self.m, 0), FormalConcept.from_sets({0, 4}, {0, 1, 3}, 6, 5))

    def test_attribute_concept(self):
        self.assertEqual(attribute_concept(self.m, 0), FormalConcept.from_sets({0, 1, 4, 5}, {0}, 6, 5))

    def test_is_concept(self):
        for extent, intent in fixtures.EXAMPLE_FACTORS:
            self.assertTrue(is_concept(self.m, extent, intent))
        self.assertFalse(is_concept(self.m, {0}, {0}))

    def test_galois_connection(self):
        for m in fixtures.random_matrices(2, 20, 5, 5):
            for extent, intent in fixtures.brute_force_concepts(m):
                self.assertEqual(up(m, extent), intent)
                self.assertEqual(down(m, intent), extent)

    def test_galois_axioms(self):
        rng = random.Random(21)
        for m in fixtures.random_matrices(22, 40, 7, 7):
            for _ in range(10):
                c1 = {i for i in range(m.n_rows) if rng.random() < 0.4}
                c2 = c1 | {i for i in range(m.n_rows) if rng.random() < 0.4}
                d = {j for j in range(m.n_cols) if rng.random() < 0.4}
                self.assertTrue(c1 <= down(m, up(m, c1)))
                self.assertTrue(d <= up(m, down(m, d)))
                self.assertTrue(up(m, c2) <= up(m, c1))
                self.assertEqual(up(m, down(m, up(m, c1))), up(m, c1))
                # C <= D^down iff D <= C^up.
                self.assertEqual(c1 <= down(m, d), d <= up(m, c1))


class TestFormalConcept(unittest.TestCase):

    def test_sets(self):
        c = FormalConcept.from_sets({0, 4, 5}, {0, 1}, 6, 5)
        self.assertEqual(c.extent, {0, 4, 5})
        self.assertEqual(c.intent, {0, 1})
        self.assertEqual(c.area, 6)
        self.assertTrue(c.covers(4, 1))
        self.assertFalse(c.covers(1, 1))
        self.assertTrue(concept_covers(c, 5, 0))
        self.assertFalse(concept_covers(c, 0, 2))

    def test_order(self):
        small = FormalConcept.from_sets({0, 4}, {0, 1, 3}, 6, 5)
        big = FormalConcept.from_sets({0, 4, 5}, {0, 1}, 6, 5)
        self.assertTrue(small <= big)
        self.assertFalse(big <= small)

    def test_invalid(self):
        with self.assertRaises(TypeError):
            FormalConcept(-1, 0)
        with self.assertRaises(InvalidIndex):
            FormalConcept.from_sets({6}, {0}, 6, 5)

    def test_bits(self):
        c = FormalConcept.from_sets({0, 4, 5}, {0, 1}, 6, 5)
        self.assertEqual(c.extent_bits, frozenbitarray("100011"))
        self.assertEqual(c.intent_bits, frozenbitarray("11000"))
        self.assertEqual(hash(c), hash(FormalConcept(frozenbitarray("100011"), frozenbitarray("11000"))))


class TestEnumeration(unittest.TestCase):

    def test_brute_force(self):
        for m in fixtures.random_matrices(3, 40, 6, 6):
            expected = fixtures.brute_force_concepts(m)
            concepts = enumerate_concepts(m)
            self.assertEqual(len(concepts), len(set(concepts)))
            self.assertEqual({(c.extent, c.intent) for c in concepts}, expected)

    def test_maximal_rectangles(self):
        def subsets(size):
            return [frozenset(s) for r in range(size + 1) for s in itertools.combinations(range(size), r)]

        for m in fixtures.random_matrices(23, 30, 4, 4):
            ones = set(m.cells())
            rectangles = [(a, b) for a in subsets(m.n_rows) for b in subsets(m.n_cols)
                          if all((i, j) in ones for i in a for j in b)]
            maximal = {(a, b) for a, b in rectangles
                       if not any(a <= a2 and b <= b2 and (a, b) != (a2, b2) for a2, b2 in rectangles)}
            self.assertEqual({(c.extent, c.intent) for c in enumerate_concepts(m)}, maximal)

    def test_lectic_order(self):
        def key(c):
            # Lectic order of intents: compare the characteristic vectors read from column 0.
            return c.intent_bits.tolist()

        m = fixtures.matrix(fixtures.EXAMPLE)
        concepts = enumerate_concepts(m)
        self.assertEqual(len(concepts), 13)
        self.assertEqual(concepts[0].intent, frozenset())
        self.assertEqual(concepts, sorted(concepts, key=key))

    def test_limit(self):
        with self.assertRaises(ConceptLimitExceeded) as cm:
            enumerate_concepts(BooleanMatrix.from_array([[0, 1, 1], [1, 0, 1], [1, 1, 0]]), max_concepts=5)
        self.assertEqual(cm.exception.limit, 5)

    def test_zero_matrix(self):
        concepts = enumerate_concepts(BooleanMatrix.zeros(2, 2))
        self.assertEqual({(c.extent, c.intent) for c in concepts},
                         {(frozenset({0, 1}), frozenset()), (frozenset(), frozenset({0, 1}))})

    def test_restricted(self):
        m = fixtures.matrix(fixtures.EXAMPLE)
        concepts = list(iter_concepts(
            m, row_universe=bits_from_indices({0, 4, 5}, 6), col_universe=bits_from_indices({0, 1}, 5)))
        self.assertEqual({(c.extent, c.intent) for c in concepts},
                         {(frozenset({0, 4, 5}), frozenset({0, 1}))})


class TestIntervals(unittest.TestCase):

    def test_interval(self):
        m = fixtures.matrix(fixtures.EXAMPLE)
        iv = interval(m, {0}, {0})
        self.assertFalse(iv.is_empty)
        self.assertEqual(iv.lower, object_concept(m, 0))
        self.assertEqual(iv.upper, attribute_concept(m, 0))
        self.assertTrue(iv.contains(FormalConcept.from_sets({0, 4, 5}, {0, 1}, 6, 5)))
        self.assertFalse(iv.contains(FormalConcept.from_sets({2, 4}, {1, 2}, 6, 5)))

    def test_empty_interval(self):
        m = fixtures.matrix(fixtures.EXAMPLE)
        self.assertTrue(interval(m, {2}, {0}).is_empty)
        with self.assertRaises(EmptyInterval):
            interval_concepts(m, {2}, {0})

    def test_interval_concepts_brute_force(self):
        for m in fixtures.random_matrices(4, 50, 6, 6):
            concepts = enumerate_concepts(m)
            for i, j in m.cells():
                expected = [c for c in concepts if i in c.extent and j in c.intent]
                self.assertEqual(interval_concepts(m, {i}, {j}), expected)

    def test_interval_contained(self):
        m = fixtures.matrix(fixtures.EXAMPLE)
        # Row 3 is contained in row 0, so I_{3,3} is contained in I_{0,3}.
        self.assertTrue(interval_contained(m, 3, 3, 0, 3))
        self.assertFalse(interval_contained(m, 0, 3, 3, 3))
        with self.assertRaises(EmptyInterval):
            interval_contained(m, 2, 0, 0, 0)

    def test_interval_contained_matches_members(self):
        for m in fixtures.random_matrices(24, 30, 5, 5):
            cells = list(m.cells())
            members = {cell: set(interval_concepts(m, {cell[0]}, {cell[1]})) for cell in cells}
            for (i, j), (i2, j2) in itertools.product(cells, cells):
                self.assertEqual(interval_contained(m, i, j, i2, j2), members[i, j] <= members[i2, j2])

    def test_interval_nonempty_iff_one(self):
        m = fixtures.matrix(fixtures.EXAMPLE)
        for i, j in itertools.product(range(m.n_rows), range(m.n_cols)):
            self.assertEqual(interval(m, {i}, {j}).is_empty, not m[i, j])

    def test_product_cells_have_member_factor(self):
        rng = random.Random(25)
        for m in fixtures.random_matrices(26, 40, 6, 6):
            concepts = enumerate_concepts(m)
            chosen = rng.sample(concepts, rng.randint(1, len(concepts)))
            product = FactorSet(chosen, m.n_rows, m.n_cols).product()
            for i, j in product.cells():
                iv = interval(m, {i}, {j})
                self.assertTrue(any(iv.contains(c) for c in chosen))


class TestConceptFiles(unittest.TestCase):

    def test_format(self):
        empty_extent = FormalConcept(frozenbitarray("000000"), frozenbitarray("11000"))
        text = format_concepts(fixtures.example_concepts()[:1] + [empty_extent])
        self.assertEqual(text, "extent: 0 4 5 | intent: 0 1\nextent: | intent: 0 1\n")

    def test_parse(self):
        concepts = parse_concepts("# factors\nextent: 0 4 5 | intent: 0 1\n\nextent: | intent: 3\n", 6, 5)
        self.assertEqual(concepts, [
            FormalConcept.from_sets({0, 4, 5}, {0, 1}, 6, 5), FormalConcept.from_sets((), {3}, 6, 5)])

    def test_parse_invalid(self):
        with self.assertRaises(MatrixFormatError) as cm:
            parse_concepts("extent: 0 | intent: 1\nextent 0 intent 1\n", 6, 5)
        self.assertEqual(cm.exception.line, 2)

    def test_parse_out_of_range(self):
        with self.assertRaises(MatrixFormatError) as cm:
            parse_concepts("extent: 0 | intent: 1\nextent: 6 | intent: 1\n", 6, 5)
        self.assertEqual(cm.exception.line, 2)

    def test_save_load(self):
        concepts = fixtures.example_concepts()
        with tempfile.TemporaryDirectory() as dspec:
            fspec = os.path.join(dspec, "f.concepts")
            save_concepts(concepts, fspec)
            self.assertEqual(load_concepts(fspec, 6, 5), concepts)
