"""Ground-truth checks for orderings.

Partial sums are compared exactly through a hash map keyed on canonical
elements. An ordering is valid when s_1..s_m are pairwise distinct and
two-sided when its reverse is valid as well, which happens exactly when no
proper consecutive block sums to zero.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from validorder import groups
from validorder.errors import MalformedOrderingError
from validorder.groups import Element, GroupSpec

# create logger
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ordering:
    """A sequence of distinct nonzero elements of `spec`."""
    spec: GroupSpec
    elems: Tuple[Element, ...] = ()

    @classmethod
    def of(cls, spec, values):
        """Build an ordering from raw values, canonicalizing each one."""
        return cls(spec, tuple(groups.elements(spec, values)))

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def reversed(self):
        return Ordering(self.spec, tuple(reversed(self.elems)))

    def checkWellFormed(self):
        """Raise `MalformedOrderingError` on zero or repeated elements."""
        seen = set()
        for a in self.elems:
            if groups.isZero(a):
                msg = (f'Ordering contains the zero element of {self.spec}')
                logger.error(msg)
                raise MalformedOrderingError(msg)
            if a in seen:
                msg = (f'Element {groups.formatElement(self.spec, a)} '
                       'appears more than once')
                logger.error(msg)
                raise MalformedOrderingError(msg)
            seen.add(a)

    def toJson(self):
        return [groups.toJsonElement(self.spec, a) for a in self.elems]

    def __str__(self):
        return '[' + groups.formatSet(self.spec, self.elems) + ']'


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    first_collision: Optional[Tuple[int, int]]
    two_sided: bool
    zero_blocks: List[Tuple[int, int]] = field(default_factory=list)
    partial_sums: List[Element] = field(default_factory=list)

    def toDict(self, spec):
        return {
            'valid': self.valid,
            'two_sided': self.two_sided,
            'first_collision': (list(self.first_collision)
                                if self.first_collision else None),
            'zero_blocks': [list(b) for b in self.zero_blocks],
            'partial_sums': [groups.toJsonElement(spec, s)
                             for s in self.partial_sums],
        }


def partialSums(o: Ordering) -> List[Element]:
    """Return s_1..s_m where s_k is the sum of the first k elements."""
    sums = []
    s = groups.zero(o.spec)
    for a in o.elems:
        s = groups.add(o.spec, s, a)
        sums.append(s)
    return sums


def _prefixSums(o):
    # s_0..s_m
    return [groups.zero(o.spec)] + partialSums(o)


def firstCollision(o: Ordering) -> Optional[Tuple[int, int]]:
    """First pair (i, j), i < j, of 1-based positions with s_i = s_j.

    Pairs are reported in order of the second index, so the collision
    returned is the earliest one a left-to-right scan runs into.
    """
    o.checkWellFormed()
    seen = {}
    for j, s in enumerate(partialSums(o), start=1):
        if s in seen:
            return (seen[s], j)
        seen[s] = j
    return None


def isValid(o: Ordering) -> bool:
    """True iff the partial sums of `o` are pairwise distinct.

    Raises
    ------
    MalformedOrderingError
        If `o` contains the zero element or a repeated element.
    """
    return firstCollision(o) is None


def zeroBlocks(o: Ordering) -> List[Tuple[int, int]]:
    """Every (i, j), 0 <= i < j <= m, (i, j) != (0, m), with s_i = s_j.

    Such a pair means the block elems[i+1..j] (1-based) sums to zero.
    """
    o.checkWellFormed()
    m = len(o)
    positions = {}
    blocks = []
    for j, s in enumerate(_prefixSums(o)):
        for i in positions.get(s, ()):
            if (i, j) != (0, m):
                blocks.append((i, j))
        positions.setdefault(s, []).append(j)
    blocks.sort()
    return blocks


def analyze(o: Ordering) -> ValidityReport:
    """Full validity report for `o`, including two-sidedness."""
    collision = firstCollision(o)
    valid = collision is None
    two_sided = valid and isValid(o.reversed())
    blocks = zeroBlocks(o)
    logger.debug(f'Analyzed ordering of length {len(o)}: valid={valid}, '
                 f'two_sided={two_sided}, {len(blocks)} zero blocks')
    return ValidityReport(valid=valid,
                          first_collision=collision,
                          two_sided=two_sided,
                          zero_blocks=blocks,
                          partial_sums=partialSums(o))


def isTwoSided(o: Ordering) -> bool:
    return isValid(o) and isValid(o.reversed())


def checkElementSet(spec: GroupSpec, elems: Sequence[Element]):
    """Shared precondition of the sequencers: distinct, nonzero elements."""
    Ordering(spec, tuple(elems)).checkWellFormed()
