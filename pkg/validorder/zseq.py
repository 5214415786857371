"""Valid orderings of finite sets of nonzero integers.

The construction places every positive element before every negative one.
Writing A = P u (-N) with P, N sets of positive integers, it finds orderings
p_1..p_|P| of P and n_1..n_|N| of N whose prefix sums never meet,

    p_1 + ... + p_i != n_1 + ... + n_j   unless (i, j) in {(0, 0), (|P|, |N|)},

and then emits p_|P|, ..., p_1, -n_1, ..., -n_|N|. The pair is built by
induction on |P| + |N|: swap roles so that sum(P) >= sum(N), stop once
|P| <= 1, otherwise peel off the smallest p* with sum(P - {p*}) != sum(N)
and append it last. The induction is unrolled into a loop, so deep inputs
never touch the recursion limit.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Tuple

from validorder import groups, verify
from validorder.errors import (GroupError, InvariantError,
                               MalformedOrderingError)
from validorder.groups import GroupSpec
from validorder.verify import Ordering

# create logger
logger = logging.getLogger(__name__)

_SWAP = None


@dataclass(frozen=True)
class SignSplit:
    """A = P u (-N); P and N hold positive integers and may overlap."""
    P: Tuple[int, ...]
    N: Tuple[int, ...]


@dataclass(frozen=True)
class PairOrdering:
    p_order: Tuple[int, ...]
    n_order: Tuple[int, ...]

    def collisions(self):
        """Index pairs (i, j) breaking prefix-disjointness.

        (0, 0) and (|P|, |N|) are exempt.
        """
        q = _prefixes(self.p_order)
        w = _prefixes(self.n_order)
        exempt = {(0, 0), (len(self.p_order), len(self.n_order))}
        where = {}
        for j, value in enumerate(w):
            where.setdefault(value, []).append(j)
        bad = []
        for i, value in enumerate(q):
            for j in where.get(value, ()):
                if (i, j) not in exempt:
                    bad.append((i, j))
        return bad

    def isPrefixDisjoint(self):
        return not self.collisions()


def _prefixes(seq):
    out = [0]
    for x in seq:
        out.append(out[-1] + x)
    return out


def _asIntegers(A):
    values = []
    for a in A:
        if isinstance(a, tuple):
            if len(a) != 1:
                raise GroupError(f'{a} is not an integer')
            a = a[0]
        values.append(groups.canonicalize(GroupSpec.integers(), a)[0])
    if len(set(values)) != len(values):
        msg = 'Input set contains repeated integers'
        logger.error(msg)
        raise MalformedOrderingError(msg)
    return values


def splitSigns(A: Iterable[int]) -> SignSplit:
    """Split A into its positives P and negated negatives N.

    Raises
    ------
    MalformedOrderingError
        If 0 is in A.
    """
    values = _asIntegers(A)
    try:
        if 0 in values:
            raise MalformedOrderingError('0 cannot be part of the input set')
    except MalformedOrderingError as e:
        logger.error(str(e))
        raise
    P = tuple(sorted(a for a in values if a > 0))
    N = tuple(sorted(-a for a in values if a < 0))
    return SignSplit(P, N)


def pairSequence(P: Iterable[int], N: Iterable[int]) -> PairOrdering:
    """Order P and N so that their prefix sums are disjoint.

    Parameters
    ----------
    P, N : iterable of int
        Finite sets of positive integers.

    Returns
    -------
    PairOrdering
        Orderings of P and N satisfying prefix-disjointness.

    Raises
    ------
    MalformedOrderingError
        If any value is not a positive integer.
    """
    P = sorted(set(P))
    N = sorted(set(N))
    if any(x <= 0 for x in P + N):
        msg = 'pairSequence takes positive integers only'
        logger.error(msg)
        raise MalformedOrderingError(msg)

    # state: (first, second) with running sums; first holds the P-role
    first, second = P, N
    sum_first, sum_second = sum(first), sum(second)
    steps = []
    while True:
        if sum_first < sum_second:
            first, second = second, first
            sum_first, sum_second = sum_second, sum_first
            steps.append(_SWAP)
            continue
        if len(first) <= 1:
            break
        # at most one element of `first` fails the test
        for idx, candidate in enumerate(first):
            if sum_first - candidate != sum_second:
                break
        p_star = first.pop(idx)
        sum_first -= p_star
        steps.append(p_star)
        logger.debug(f'p* = {p_star}, remaining P-role sum {sum_first} '
                     f'against {sum_second}')

    p_order, n_order = list(first), list(second)
    for step in reversed(steps):
        if step is _SWAP:
            p_order, n_order = n_order, p_order
        else:
            p_order.append(step)
    return PairOrdering(tuple(p_order), tuple(n_order))


def orderFromPair(pair: PairOrdering):
    """p_|P|, ..., p_1 followed by -n_1, ..., -n_|N|."""
    return list(reversed(pair.p_order)) + [-n for n in pair.n_order]


def sequenceIntegers(A: Iterable[int]) -> Ordering:
    """Valid, two-sided ordering of A with positives before negatives.

    Parameters
    ----------
    A : iterable of int
        Finite set of nonzero integers (bare ints or 1-tuples).

    Returns
    -------
    Ordering
        Ordering over Z, checked by the verifier before it is returned.

    Raises
    ------
    MalformedOrderingError
        If 0 is in A or A repeats a value.
    InvariantError
        If the constructed ordering fails verification.
    """
    split = splitSigns(A)
    pair = pairSequence(split.P, split.N)
    ordering = Ordering.of(GroupSpec.integers(), orderFromPair(pair))
    if not verify.isValid(ordering):
        msg = f'Integer construction produced an invalid ordering {ordering}'
        logger.critical(msg)
        raise InvariantError(msg)
    return ordering


def isPositivesFirst(ordering: Ordering) -> bool:
    signs = [a[0] > 0 for a in ordering]
    return signs == sorted(signs, reverse=True)
