import unittest

from validorder import corpus, verify, zseq
from validorder.errors import MalformedOrderingError


def _ints(ordering):
    return [a[0] for a in ordering]


class TestSplitSigns(unittest.TestCase):

    def test_split(self):
        split = zseq.splitSigns({1, 2, 3, -3})
        self.assertEqual((split.P, split.N), ((1, 2, 3), (3, )))
        split = zseq.splitSigns({-1, -2})
        self.assertEqual((split.P, split.N), ((), (1, 2)))
        split = zseq.splitSigns(set())
        self.assertEqual((split.P, split.N), ((), ()))

    def test_zero_rejected(self):
        with self.assertRaises(MalformedOrderingError):
            zseq.splitSigns({0, 1})


class TestPairSequence(unittest.TestCase):

    def test_worked_example(self):
        pair = zseq.pairSequence({1, 2, 3}, {3})
        self.assertEqual(pair.p_order, (2, 3, 1))
        self.assertEqual(pair.n_order, (3, ))
        self.assertEqual(pair.isPrefixDisjoint(), True)

    def test_trivial_cases(self):
        pair = zseq.pairSequence(set(), set())
        self.assertEqual((pair.p_order, pair.n_order), ((), ()))
        pair = zseq.pairSequence({4}, {1, 2})
        self.assertEqual((pair.p_order, pair.n_order), ((4, ), (1, 2)))

    def test_non_positive_rejected(self):
        with self.assertRaises(MalformedOrderingError):
            zseq.pairSequence({1, -2}, {3})
        with self.assertRaises(MalformedOrderingError):
            zseq.pairSequence({1}, {0})

    def test_collisions_reported(self):
        pair = zseq.PairOrdering((1, 2), (1, 4))
        self.assertEqual(pair.collisions(), [(1, 1)])
        pair = zseq.PairOrdering((2, 1), (1, 2))
        self.assertEqual(pair.isPrefixDisjoint(), True)

    def test_random_pairs_are_prefix_disjoint(self):
        rng = corpus.generator(29)
        for _ in range(300):
            P = corpus.randomResidueSet(rng, 40, int(rng.integers(0, 8)))
            N = corpus.randomResidueSet(rng, 40, int(rng.integers(0, 8)))
            pair = zseq.pairSequence(P, N)
            self.assertEqual(sorted(pair.p_order), sorted(P))
            self.assertEqual(sorted(pair.n_order), sorted(N))
            self.assertEqual(pair.isPrefixDisjoint(), True, (P, N))


class TestSequenceIntegers(unittest.TestCase):

    def test_worked_examples(self):
        self.assertEqual(_ints(zseq.sequenceIntegers({1, 2, 3, -3})),
                         [1, 3, 2, -3])
        self.assertEqual(_ints(zseq.sequenceIntegers({-1, -2})), [-2, -1])
        self.assertEqual(_ints(zseq.sequenceIntegers({7})), [7])
        self.assertEqual(_ints(zseq.sequenceIntegers(set())), [])

    def test_accepts_one_tuples(self):
        self.assertEqual(_ints(zseq.sequenceIntegers([(2, ), (-1, )])),
                         [2, -1])

    def test_malformed(self):
        with self.assertRaises(MalformedOrderingError):
            zseq.sequenceIntegers({0, 5})
        with self.assertRaises(MalformedOrderingError):
            zseq.sequenceIntegers([3, 3])

    def test_random_sets(self):
        rng = corpus.generator(31)
        for _ in range(500):
            size = int(rng.integers(0, 25))
            A = corpus.randomIntegerSet(rng, size, 60)
            ordering = zseq.sequenceIntegers(A)
            self.assertEqual(sorted(_ints(ordering)), A)
            self.assertEqual(verify.isValid(ordering), True, A)
            self.assertEqual(verify.isValid(ordering.reversed()), True, A)
            self.assertEqual(zseq.isPositivesFirst(ordering), True)
            self.assertEqual(zseq.sequenceIntegers(reversed(A)), ordering)

    def test_long_input_runs_without_recursion(self):
        A = list(range(1, 3001)) + [-a for a in range(1, 1500)]
        ordering = zseq.sequenceIntegers(A)
        self.assertEqual(len(ordering), len(A))
        self.assertEqual(zseq.isPositivesFirst(ordering), True)


if __name__ == '__main__':
    unittest.main()
