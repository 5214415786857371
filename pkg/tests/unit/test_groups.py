import unittest

from validorder import corpus, groups
from validorder.errors import GroupError, ParseError
from validorder.groups import GroupSpec


class TestGroupSpec(unittest.TestCase):

    def test_names(self):
        self.assertEqual(str(GroupSpec.integers()), 'Z')
        self.assertEqual(str(GroupSpec.primeField(13)), 'F_13')
        self.assertEqual(str(GroupSpec.cyclic(6)), 'Z_6')
        self.assertEqual(str(GroupSpec.lattice(2)), 'Z^2')
        self.assertEqual(
            str(GroupSpec.product(GroupSpec.cyclic(6), GroupSpec.integers())),
            'Z_6 x Z')

    def test_composite_modulus_rejected(self):
        with self.assertRaises(GroupError):
            GroupSpec.primeField(15)
        with self.assertRaises(GroupError):
            GroupSpec.primeField(1)

    def test_cyclic_order_at_least_two(self):
        with self.assertRaises(GroupError):
            GroupSpec.cyclic(1)

    def test_depth_and_coordinate_limits(self):
        spec = GroupSpec.lattice(2)
        for _ in range(3):
            spec = GroupSpec.product(spec)
        self.assertEqual(spec.depth, 4)
        with self.assertRaises(GroupError):
            GroupSpec.product(spec)
        self.assertEqual(GroupSpec.lattice(8).rank, 8)
        with self.assertRaises(GroupError):
            GroupSpec.lattice(9)

    def test_split_last(self):
        spec = GroupSpec.product(GroupSpec.cyclic(5), GroupSpec.integers())
        self.assertEqual(spec.endsWithIntegers, True)
        self.assertEqual(spec.splitLast(), GroupSpec.cyclic(5))
        self.assertEqual(GroupSpec.lattice(3).splitLast(),
                         GroupSpec.lattice(2))
        with self.assertRaises(GroupError):
            GroupSpec.integers().splitLast()
        with self.assertRaises(GroupError):
            GroupSpec.product(GroupSpec.integers(),
                              GroupSpec.cyclic(5)).splitLast()

    def test_finite_groups(self):
        spec = GroupSpec.product(GroupSpec.cyclic(4), GroupSpec.primeField(3))
        self.assertEqual(spec.isFinite, True)
        self.assertEqual(spec.moduli, (4, 3))
        self.assertEqual(GroupSpec.lattice(2).isFinite, False)


class TestElements(unittest.TestCase):

    def setUp(self):
        self.Z = GroupSpec.integers()
        self.F5 = GroupSpec.primeField(5)
        self.F13 = GroupSpec.primeField(13)
        self.Z2 = GroupSpec.lattice(2)

    def test_canonicalize(self):
        self.assertEqual(groups.canonicalize(self.F13, [14]), (1, ))
        self.assertEqual(groups.canonicalize(self.F13, -1), (12, ))
        self.assertEqual(groups.canonicalize(self.Z, [-5]), (-5, ))
        self.assertEqual(groups.canonicalize(self.Z2, [3, -2]), (3, -2))

    def test_canonicalize_is_idempotent(self):
        rng = corpus.generator(11)
        for spec in (self.F13, self.Z2, GroupSpec.cyclic(6)):
            for a in corpus.randomElementSet(rng, spec, 6, magnitude=50):
                self.assertEqual(groups.canonicalize(spec, a), a)

    def test_canonicalize_rejects_bad_input(self):
        with self.assertRaises(GroupError):
            groups.canonicalize(self.Z2, [1])
        with self.assertRaises(GroupError):
            groups.canonicalize(self.Z, [2**120])
        with self.assertRaises(GroupError):
            groups.canonicalize(self.Z, ['x'])

    def test_arithmetic(self):
        self.assertEqual(groups.add(self.F5, (4, ), (3, )), (2, ))
        self.assertEqual(groups.neg(self.F13, (1, )), (12, ))
        self.assertEqual(groups.sub(self.Z2, (1, 1), (2, -1)), (-1, 2))
        self.assertEqual(groups.scale(self.F13, (7, ), 2), (1, ))
        self.assertEqual(groups.total(self.Z, [(1, ), (2, ), (-3, )]), (0, ))
        self.assertEqual(groups.isZero(groups.add(self.Z, (7, ), (-7, ))),
                         True)

    def test_operand_mismatch(self):
        with self.assertRaises(GroupError):
            groups.add(self.Z2, (1, ), (1, 2))
        with self.assertRaises(GroupError):
            groups.add(self.F5, (7, ), (1, ))
        with self.assertRaises(GroupError):
            groups.neg(GroupSpec.cyclic(6), (-1, ))
        mixed = GroupSpec.product(GroupSpec.cyclic(4), GroupSpec.integers())
        with self.assertRaises(GroupError):
            groups.sub(mixed, (4, 1), (0, 1))
        self.assertEqual(groups.sub(mixed, (3, -9), (1, 1)), (2, -10))

    def test_group_laws_on_random_elements(self):
        rng = corpus.generator(3)
        specs = (self.Z, self.F13, self.Z2, GroupSpec.cyclic(12),
                 GroupSpec.product(GroupSpec.cyclic(6), GroupSpec.integers()))
        for spec in specs:
            for _ in range(50):
                a, b, c = [groups.canonicalize(
                    spec, [int(x) for x in rng.integers(-40, 40,
                                                         size=spec.rank)])
                           for _ in range(3)]
                self.assertEqual(groups.add(spec, groups.add(spec, a, b), c),
                                 groups.add(spec, a, groups.add(spec, b, c)))
                self.assertEqual(groups.add(spec, a, b),
                                 groups.add(spec, b, a))
                self.assertEqual(groups.add(spec, a, groups.zero(spec)), a)
                self.assertEqual(
                    groups.isZero(groups.add(spec, a, groups.neg(spec, a))),
                    True)


class TestSyntax(unittest.TestCase):

    def test_parse_group(self):
        self.assertEqual(groups.parseGroup('Z'), GroupSpec.integers())
        self.assertEqual(groups.parseGroup('Z^2'), GroupSpec.lattice(2))
        self.assertEqual(groups.parseGroup('F_13'), GroupSpec.primeField(13))
        self.assertEqual(groups.parseGroup('Z_6'), GroupSpec.cyclic(6))
        self.assertEqual(
            groups.parseGroup('Z_6 x Z'),
            GroupSpec.product(GroupSpec.cyclic(6), GroupSpec.integers()))

    def test_parse_group_errors(self):
        with self.assertRaises(ParseError):
            groups.parseGroup('Q')
        with self.assertRaises(GroupError):
            groups.parseGroup('F_15')

    def test_parse_set(self):
        Z2 = GroupSpec.lattice(2)
        F13 = GroupSpec.primeField(13)
        self.assertEqual(groups.parseSet(Z2, '(0,1);(1,0)'),
                         [(0, 1), (1, 0)])
        self.assertEqual(groups.parseSet(F13, '1,7;11'),
                         [(1, ), (7, ), (11, )])
        self.assertEqual(groups.parseSet(F13, '14'), [(1, )])
        self.assertEqual(groups.parseSet(F13, ''), [])

    def test_parse_set_errors(self):
        Z2 = GroupSpec.lattice(2)
        with self.assertRaises(ParseError):
            groups.parseElement(Z2, '3')
        with self.assertRaises(ParseError):
            groups.parseSet(GroupSpec.integers(), '1,,2')
        with self.assertRaises(ParseError):
            groups.parseSet(GroupSpec.integers(), '1,a')

    def test_format(self):
        Z2 = GroupSpec.lattice(2)
        self.assertEqual(groups.formatSet(Z2, [(0, 1), (1, -2)]),
                         '(0,1);(1,-2)')
        self.assertEqual(groups.formatSet(GroupSpec.integers(), [(1, ), (-3, )]),
                         '1,-3')
        self.assertEqual(groups.toJsonElement(Z2, (0, 1)), [0, 1])
        self.assertEqual(groups.toJsonElement(GroupSpec.integers(), (4, )), 4)


if __name__ == '__main__':
    unittest.main()
