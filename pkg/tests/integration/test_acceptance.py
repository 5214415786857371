"""End-to-end property checks over seeded corpora.

These run the full constructions at desk scale and take a few minutes.
"""
import itertools
import json
import unittest

from validorder import (corpus, fpseq, productseq, rectify, search, verify,
                        zseq)
from validorder.groups import GroupSpec
from validorder.verify import Ordering


def integerCorpus(seed, count=10000):
    rng = corpus.generator(seed)
    return [corpus.randomIntegerSet(rng, int(rng.integers(0, 51)), 10**9)
            for _ in range(count)]


def rectificationSummary(p, ell, seed, count=1000):
    """(points, certificate) for `count` random sets within the
    rectification bound; the certificate is None when no dilation works.
    """
    rng = corpus.generator(seed)
    bound = rectify.levBound(p, ell)
    found = []
    for _ in range(count):
        size = int(rng.integers(1, bound + 1))
        points = corpus.randomResidueSet(rng, p, size - 1, with_zero=True)
        found.append((points, rectify.findDilation(points, p, ell)))
    return found


class TestIntegerConstruction(unittest.TestCase):

    def test_random_integer_sets(self):
        for A in integerCorpus(seed=2024):
            ordering = zseq.sequenceIntegers(A)
            self.assertEqual(verify.isValid(ordering), True, A)
            self.assertEqual(zseq.isPositivesFirst(ordering), True, A)
            self.assertEqual(verify.isValid(ordering.reversed()), True, A)

    def test_prefix_disjointness(self):
        for A in integerCorpus(seed=2024):
            split = zseq.splitSigns(A)
            pair = zseq.pairSequence(split.P, split.N)
            self.assertEqual(pair.collisions(), [], A)


class TestRectification(unittest.TestCase):

    def test_sets_within_bound_rectify(self):
        for p in (101, 1009, 10007):
            for ell in (2, 3, 4):
                misses = []
                for points, cert in rectificationSummary(p, ell,
                                                         seed=p * 10 + ell):
                    if cert is None:
                        misses.append(points)
                        continue
                    self.assertEqual(ell * cert.width < p, True)
                    self.assertEqual(cert.forward[0], 0)
                    self.assertEqual(cert.checkStructure(), True)
                    if len(cert.mapping) <= 5:
                        self.assertEqual(rectify.freimanVerify(cert, ell),
                                         True, cert.domain)
                # a miss must hold up under the independent scalar scan
                for points in misses:
                    self.assertEqual(
                        rectify._firstLambdaScalar(points, p, ell), None)
                self.assertEqual(len(misses) <= 10, True, (p, ell, misses))


class TestGuaranteeRegime(unittest.TestCase):

    def test_pipeline_never_falls_back(self):
        for p in (1009, 10007, 100003):
            rng = corpus.generator(p)
            for _ in range(1000):
                size = int(rng.integers(3, fpseq.grahamBound(p) + 1))
                A = corpus.randomResidueSet(rng, p, size)
                result = fpseq.sequenceModP(A, p)
                self.assertEqual(result.method, fpseq.RECTIFIED_PULLBACK,
                                 (p, A))
                self.assertEqual(verify.isValid(result.ordering), True)


class TestSweeps(unittest.TestCase):

    def test_small_fields_have_no_counterexamples(self):
        for p in (2, 3, 5, 7, 11, 13):
            report = search.sweep(p, p - 1, 'backtracking')
            self.assertEqual(report.counterexamples, [], p)
            self.assertEqual(report.subset_count, 2**(p - 1) - 1)

    def test_oracles_agree_on_f7(self):
        F7 = GroupSpec.primeField(7)
        for size in range(1, 7):
            for A in itertools.combinations(range(1, 7), size):
                found = search.backtrackOrder(A, F7)
                count = search.countValidOrderings(A, F7)
                self.assertEqual(found is not None, count > 0, A)
                result = fpseq.sequenceModP(A, 7)
                self.assertEqual(verify.isValid(result.ordering), True, A)


class TestZeroBlocks(unittest.TestCase):

    def test_two_sided_iff_no_zero_block(self):
        rng = corpus.generator(6)
        specs = (GroupSpec.integers(), GroupSpec.primeField(11),
                 GroupSpec.cyclic(10), GroupSpec.lattice(2))
        for n in range(10000):
            spec = specs[n % len(specs)]
            size = int(rng.integers(1, 9))
            o = Ordering(spec, tuple(
                corpus.randomOrdering(rng, spec, size, magnitude=4)))
            report = verify.analyze(o)
            self.assertEqual(report.two_sided, not report.zero_blocks)


class TestProductConstruction(unittest.TestCase):

    def test_all_small_planar_sets(self):
        Z2 = GroupSpec.lattice(2)
        box = [(x, y) for x in range(-2, 3) for y in range(-2, 3)
               if (x, y) != (0, 0)]
        for size in range(1, 6):
            for A in itertools.combinations(box, size):
                result = productseq.sequenceProduct(A, Z2)
                self.assertEqual(verify.isValid(result.ordering), True, A)
                self.assertEqual(sorted(result.ordering), sorted(A))

    def test_zero_layer_layout_recorded(self):
        result = productseq.sequenceProduct({(0, 1), (1, 0), (-1, 0)},
                                            GroupSpec.lattice(2))
        self.assertEqual(result.layout in (None, 'P,M,N'), False)
        self.assertEqual(result.toDict()['layout'], result.layout)


class TestDeterminism(unittest.TestCase):

    def summary(self):
        orderings = [zseq.sequenceIntegers(A).toJson()
                     for A in integerCorpus(seed=9, count=300)]
        certs = [cert.toDict() if cert else points for points, cert in
                 rectificationSummary(1009, 3, seed=9, count=100)]
        pipeline = [fpseq.sequenceModP(A, 101).toDict()
                    for A in itertools.combinations(range(1, 12), 3)]
        sweep = search.sweep(11, workers=2).toDict()
        return json.dumps({'integers': orderings, 'certificates': certs,
                           'pipeline': pipeline, 'sweep': sweep},
                          sort_keys=True)

    def test_reports_are_byte_identical(self):
        self.assertEqual(self.summary(), self.summary())


if __name__ == '__main__':
    unittest.main()
