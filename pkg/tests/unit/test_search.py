import itertools
import math
import unittest

from validorder import corpus, search, verify
from validorder.errors import GuardExceededError, SequencerUnavailableError
from validorder.groups import GroupSpec
from validorder.verify import Ordering


def _bruteForceCount(A, spec, two_sided=False):
    count = 0
    for perm in itertools.permutations(A):
        o = Ordering(spec, perm)
        if verify.isValid(o) and (not two_sided or verify.isTwoSided(o)):
            count += 1
    return count


class TestBacktracking(unittest.TestCase):

    def setUp(self):
        self.F5 = GroupSpec.primeField(5)

    def test_first_ordering_is_lexicographic(self):
        o = search.backtrackOrder({1, 2, 3, 4}, self.F5)
        self.assertEqual([a[0] for a in o], [1, 2, 4, 3])
        o = search.backtrackOrder({1}, GroupSpec.primeField(7))
        self.assertEqual([a[0] for a in o], [1])
        o = search.backtrackOrder({1, 2}, GroupSpec.cyclic(3))
        self.assertEqual([a[0] for a in o], [1, 2])

    def test_two_sided(self):
        o = search.backtrackOrder({1, 4}, self.F5, two_sided=True)
        self.assertEqual([a[0] for a in o], [1, 4])
        self.assertEqual(verify.isTwoSided(o), True)

    def test_count(self):
        self.assertEqual(
            search.countValidOrderings({1, 2}, GroupSpec.integers()), 2)
        self.assertEqual(search.countValidOrderings({1, 4}, self.F5), 2)
        self.assertEqual(search.countValidOrderings({1, 2, 3, 4}, self.F5),
                         _bruteForceCount([(1, ), (2, ), (3, ), (4, )],
                                          self.F5))

    def test_counts_match_brute_force(self):
        rng = corpus.generator(59)
        for spec in (GroupSpec.primeField(7), GroupSpec.cyclic(8),
                     GroupSpec.lattice(2)):
            for _ in range(25):
                size = int(rng.integers(1, 6))
                A = corpus.randomElementSet(rng, spec, size, magnitude=2)
                for two_sided in (False, True):
                    self.assertEqual(
                        search.countValidOrderings(A, spec,
                                                   two_sided=two_sided),
                        _bruteForceCount(A, spec, two_sided), A)

    def test_guards(self):
        Z = GroupSpec.integers()
        with self.assertRaises(GuardExceededError):
            search.backtrackOrder(range(1, 22), Z)
        with self.assertRaises(GuardExceededError):
            search.countValidOrderings(range(1, 12), Z)
        o = search.backtrackOrder(range(1, 22), Z, force=True)
        self.assertEqual(verify.isValid(o), True)

    def test_nodes_counted(self):
        backtracker = search.Backtracker(self.F5)
        backtracker.first({1, 2, 3, 4})
        self.assertEqual(backtracker.nodes > 0, True)


class TestSweep(unittest.TestCase):

    def test_small_field(self):
        report = search.sweep(5)
        self.assertEqual(report.holds, True)
        self.assertEqual(report.subset_count, 15)
        for size, stats in report.per_size.items():
            self.assertEqual(stats.subset_count, math.comb(4, size))
        report = search.sweep(3, max_size=1)
        self.assertEqual(report.subset_count, 2)

    def test_pipeline_engine(self):
        report = search.sweep(7, engine='pipeline')
        self.assertEqual(report.holds, True)
        self.assertEqual(report.subset_count, 63)

    def test_parallel_matches_serial(self):
        serial = search.sweep(7, workers=1)
        parallel = search.sweep(7, workers=2)
        self.assertEqual(parallel.toDict(), serial.toDict())

    def test_cyclic_sweep(self):
        report = search.sweep(6, cyclic=True)
        self.assertEqual(report.group, 'Z_6')
        self.assertEqual(report.subset_count, 31)

    def test_two_sided_sweep(self):
        report = search.sweep(5, two_sided=True)
        self.assertEqual(report.subset_count, 15)
        self.assertEqual(report.two_sided, True)

    def test_guard_and_engine_errors(self):
        with self.assertRaises(GuardExceededError):
            search.sweep(19)
        with self.assertRaises(SequencerUnavailableError):
            search.sweep(7, engine='pipeline', cyclic=True)
        with self.assertRaises(ValueError):
            search.sweep(7, engine='random')

    def test_report_rows(self):
        report = search.sweep(5)
        rows = report.toCsvRows()
        self.assertEqual(rows[0][:5], ['p', 'group', 'engine', 'two_sided',
                                       'size'])
        self.assertEqual(len(rows), 1 + len(report.per_size))
        self.assertEqual('elapsed' in report.toDict()['per_size']['1'], False)
        self.assertEqual('elapsed' in report.toDict(True)['per_size']['1'],
                         True)


if __name__ == '__main__':
    unittest.main()
