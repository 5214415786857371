"""Sequencing subsets of H x Z, and the group dispatcher.

A set A of nonzero elements of H x Z splits by the sign of the last
coordinate into P (positive), M (zero, so the H-part is nonzero) and N
(negative). P and -N are ordered with the integer induction carried over to
full group elements: roles are swapped on the last-coordinate sums, and p*
is the smallest element of P with sum(P - {p*}) != sum(N) in the group,
which at most one element can fail by cancellation. M is ordered by the
sequencer of H. The three blocks are then assembled in a fixed sequence of
layouts, each one checked; the first valid layout wins, and if none is
valid the set goes to the backtracking oracle.

`sequenceSet` picks a sequencer for any supported group and is also what
orders M.
"""
from __future__ import annotations

import logging
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Tuple

from validorder import fpseq, groups, verify, zseq
from validorder.errors import (NoValidOrderingError,
                               SequencerUnavailableError)
from validorder.fpseq import (BACKTRACKING, INTEGER_CONSTRUCTION,
                              PRODUCT_CONSTRUCTION, TRIVIAL,
                              SequencingResult)
from validorder.groups import (CYCLIC, INTEGERS, PRIME_FIELD, PRODUCT,
                               Element, GroupSpec)
from validorder.verify import Ordering

# create logger
logger = logging.getLogger(__name__)

LAYOUTS = (
    ('M', 'P', 'N'),
    ('P', 'M', 'N'),
    ('P', 'N', 'M'),
    ('N', 'M', 'P'),
    ('M', 'N', 'P'),
    ('N', 'P', 'M'),
)


def layoutName(layout):
    return ','.join(layout)


class LayoutStats:
    """Tally of the layouts that produced product orderings.

    Shared by every call in the process; `fallback` counts sets that needed
    the backtracking oracle.
    """
    def __init__(self):
        self._lock = threading.Lock()
        self._counts = Counter()

    def record(self, name):
        with self._lock:
            self._counts[name] += 1

    def snapshot(self):
        with self._lock:
            return dict(self._counts)

    def reset(self):
        with self._lock:
            self._counts.clear()


layout_stats = LayoutStats()


@dataclass(frozen=True)
class TriSplit:
    P: Tuple[Element, ...]
    M: Tuple[Element, ...]
    N: Tuple[Element, ...]


def triSplit(A: Iterable[Element], spec: GroupSpec) -> TriSplit:
    """Partition A by the sign of the last coordinate."""
    elems = groups.elements(spec, A)
    verify.checkElementSet(spec, elems)
    P = tuple(sorted(a for a in elems if a[-1] > 0))
    M = tuple(sorted(a for a in elems if a[-1] == 0))
    N = tuple(sorted(a for a in elems if a[-1] < 0))
    return TriSplit(P, M, N)


def pairSequenceElements(spec, P, N):
    """Prefix-disjoint orderings of P and N, N given as negated elements.

    Every element of P and N has a positive last coordinate; the role swap
    compares last-coordinate sums and the choice of p* compares whole
    group sums.
    """
    first, second = sorted(P), sorted(N)
    sum_first, sum_second = groups.total(spec, first), \
        groups.total(spec, second)
    steps = []
    while True:
        if sum_first[-1] < sum_second[-1]:
            first, second = second, first
            sum_first, sum_second = sum_second, sum_first
            steps.append(None)
            continue
        if len(first) <= 1:
            break
        for idx, candidate in enumerate(first):
            if groups.sub(spec, sum_first, candidate) != sum_second:
                break
        p_star = first.pop(idx)
        sum_first = groups.sub(spec, sum_first, p_star)
        steps.append(p_star)

    p_order, n_order = list(first), list(second)
    for step in reversed(steps):
        if step is None:
            p_order, n_order = n_order, p_order
        else:
            p_order.append(step)
    return p_order, n_order


def _embed(elems):
    return [h + (0, ) for h in elems]


def sequenceProduct(A: Iterable[Element], spec: GroupSpec,
                    force=False) -> SequencingResult:
    """Valid ordering of a set of nonzero elements of H x Z.

    Parameters
    ----------
    A : iterable of Element
        Nonempty set of nonzero elements.
    spec : GroupSpec
        A product whose last flattened coordinate is Z.
    force : bool, optional
        Lift resource guards of the sub-sequencers and the fallback.

    Returns
    -------
    SequencingResult
        `product-construction` with the winning layout, `trivial` for a
        single element, or `backtracking` when no layout is valid.

    Raises
    ------
    GroupError
        If `spec` is not of the form H x Z.
    MalformedOrderingError
        On zero or repeated elements.
    SequencerUnavailableError
        If H has no sequencer.
    """
    H = spec.splitLast()
    split = triSplit(A, spec)
    elems = list(split.P + split.M + split.N)
    if len(elems) <= 1:
        return fpseq.verifiedResult(Ordering(spec, tuple(elems)), TRIVIAL)

    negated = [groups.neg(spec, a) for a in split.N]
    p_order, n_order = pairSequenceElements(spec, split.P, negated)
    blocks = {
        'P': list(reversed(p_order)),
        'N': [groups.neg(spec, n) for n in n_order],
    }
    try:
        h_result = sequenceSet([a[:-1] for a in split.M], H, force=force)
        blocks['M'] = _embed(h_result.ordering.elems)
    except NoValidOrderingError:
        logger.warning(f'The zero-layer of the set has no valid ordering '
                       f'in {H}')
        blocks = None

    if blocks is not None:
        for layout in LAYOUTS:
            candidate = Ordering(spec, tuple(a for name in layout
                                             for a in blocks[name]))
            if verify.isValid(candidate):
                name = layoutName(layout)
                layout_stats.record(name)
                logger.debug(f'Layout {name} valid for {len(elems)} '
                             f'elements of {spec}')
                return fpseq.verifiedResult(candidate, PRODUCT_CONSTRUCTION,
                                            layout=name)
            logger.debug(f'Layout {layoutName(layout)} collides')

    logger.warning(f'No block layout is valid for {len(elems)} elements of '
                   f'{spec}; falling back to backtracking')
    layout_stats.record('fallback')
    return fpseq.backtrackingResult(spec, elems, force=force)


def sequenceSet(A: Iterable, spec: GroupSpec, force=False) -> SequencingResult:
    """Valid ordering of A with the sequencer suited to `spec`.

    Z uses the integer construction, F_p the rectification pipeline, products
    ending in Z the product construction, and finite groups the backtracking
    oracle.

    Raises
    ------
    SequencerUnavailableError
        For infinite products that do not end in Z.
    """
    elems = groups.elements(spec, A)
    verify.checkElementSet(spec, elems)
    if not elems:
        return fpseq.verifiedResult(Ordering(spec, ()), TRIVIAL)

    leaves = list(spec.leaves())
    if spec.kind == PRODUCT and len(leaves) == 1:
        inner = sequenceSet(elems, leaves[0], force=force)
        return SequencingResult(
            ordering=Ordering(spec, inner.ordering.elems),
            method=inner.method, certificate=inner.certificate,
            verified=inner.verified, layout=inner.layout, nodes=inner.nodes)

    if len(elems) == 1:
        return fpseq.verifiedResult(Ordering(spec, tuple(elems)), TRIVIAL)
    if spec.kind == INTEGERS:
        return fpseq.verifiedResult(zseq.sequenceIntegers(elems),
                                    INTEGER_CONSTRUCTION)
    if spec.kind == PRIME_FIELD:
        return fpseq.sequenceModP(elems, spec.modulus, force=force)
    if spec.endsWithIntegers:
        return sequenceProduct(elems, spec, force=force)
    if spec.kind == CYCLIC or spec.isFinite:
        return fpseq.backtrackingResult(spec, elems, force=force,
                                        method=BACKTRACKING)
    msg = f'No sequencer is available for {spec}'
    logger.error(msg)
    raise SequencerUnavailableError(msg)
