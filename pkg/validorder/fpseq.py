"""Valid orderings of subsets of F_p \\ {0}.

For |A| >= 3 the set A' = A u {0} is rectified at order |A| - 1, the
nonzero images are ordered by the integer construction, and the ordering is
pulled back through the certificate. Validity of an ordering only involves
non-vanishing of block sums of length at most |A| - 1, which the
isomorphism preserves, so the pullback is valid. When no rectifying
dilation exists the set is handed to the backtracking oracle.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import sympy

from validorder import groups, rectify, search, verify, zseq
from validorder.errors import (InvariantError, MalformedOrderingError,
                               NoValidOrderingError)
from validorder.groups import GroupSpec
from validorder.rectify import RectCertificate
from validorder.verify import Ordering

# create logger
logger = logging.getLogger(__name__)

TRIVIAL = 'trivial'
INTEGER_CONSTRUCTION = 'integer-construction'
RECTIFIED_PULLBACK = 'rectified-pullback'
PRODUCT_CONSTRUCTION = 'product-construction'
BACKTRACKING = 'backtracking'
METHODS = (TRIVIAL, INTEGER_CONSTRUCTION, RECTIFIED_PULLBACK,
           PRODUCT_CONSTRUCTION, BACKTRACKING)

# below this the ratio log p / log log p is not meaningful
_GRAHAM_THRESHOLD = 17


@dataclass(frozen=True)
class SequencingResult:
    """A verified ordering together with how it was obtained.

    `layout` names the block layout for product constructions and `nodes`
    counts backtracking nodes when the oracle was used.
    """
    ordering: Ordering
    method: str
    certificate: Optional[RectCertificate] = None
    verified: bool = True
    layout: Optional[str] = None
    nodes: int = 0

    def toDict(self):
        spec = self.ordering.spec
        return {
            'group': str(spec),
            'ordering': self.ordering.toJson(),
            'partial_sums': [groups.toJsonElement(spec, s)
                             for s in verify.partialSums(self.ordering)],
            'method': self.method,
            'layout': self.layout,
            'certificate': (self.certificate.toDict()
                            if self.certificate else None),
            'verified': self.verified,
            'backtrack_nodes': self.nodes,
        }


def verifiedResult(ordering, method, **kwargs):
    """Wrap `ordering` after checking it; an invalid ordering is a bug."""
    if not verify.isValid(ordering):
        msg = f'{method} produced an invalid ordering {ordering}'
        logger.critical(msg)
        raise InvariantError(msg)
    return SequencingResult(ordering=ordering, method=method, verified=True,
                            **kwargs)


def backtrackingResult(spec, elems, force=False, method=BACKTRACKING):
    """Sequence `elems` with the backtracking oracle.

    Raises
    ------
    NoValidOrderingError
        If the set has no valid ordering at all.
    """
    backtracker = search.Backtracker(spec, force=force)
    ordering = backtracker.first(elems)
    if ordering is None:
        msg = (f'No valid ordering exists for '
               f'{{{groups.formatSet(spec, sorted(elems))}}} in {spec}')
        logger.critical(msg)
        raise NoValidOrderingError(msg, elements=sorted(elems))
    return verifiedResult(ordering, method, nodes=backtracker.nodes)


def grahamBound(p: int) -> int:
    """Floor of ln p / ln ln p, the size below which a valid ordering of any
    subset of F_p \\ {0} is guaranteed by the rectification argument.

    Primes below 17 return 1. Ratios within 1e-9 of an integer n are settled
    by comparing p with (ln p)**n at 50 significant digits.
    """
    GroupSpec.primeField(p)
    if p < _GRAHAM_THRESHOLD:
        return 1
    ratio = math.log(p) / math.log(math.log(p))
    n = round(ratio)
    if abs(ratio - n) < 1e-9:
        power = (sympy.log(p)**n).evalf(50)
        return n if bool(sympy.Integer(p) >= power) else n - 1
    return math.floor(ratio)


def sequenceModP(A: Iterable[int], p: int, force=False) -> SequencingResult:
    """Valid ordering of a set of nonzero residues mod p.

    Parameters
    ----------
    A : iterable of int
        Nonempty set of nonzero residues.
    p : int
        Prime modulus.
    force : bool, optional
        Lift the resource guards of the dilation scan and the fallback.

    Returns
    -------
    SequencingResult
        Verified ordering; `method` is `trivial` for |A| <= 2,
        `rectified-pullback` when a certificate was found (attached), and
        `backtracking` otherwise.

    Raises
    ------
    MalformedOrderingError
        If A is empty or holds zero or repeated residues.
    InvariantError
        If a pulled-back ordering fails verification.
    NoValidOrderingError
        If even the backtracking oracle finds nothing.
    """
    spec = GroupSpec.primeField(p)
    elems = groups.elements(spec, A)
    try:
        if not elems:
            raise MalformedOrderingError('sequenceModP needs a nonempty set')
    except MalformedOrderingError as e:
        logger.error(str(e))
        raise
    verify.checkElementSet(spec, elems)

    if len(elems) == 1:
        return verifiedResult(Ordering(spec, tuple(elems)), TRIVIAL)
    if len(elems) == 2:
        return verifiedResult(Ordering(spec, tuple(sorted(elems))), TRIVIAL)

    residues = sorted(a[0] for a in elems)
    ell = len(residues) - 1
    cert = rectify.findDilation([0] + residues, p, ell, force=force)
    if cert is not None:
        images = [rectify.applyIso(cert, a) for a in residues]
        integer_order = zseq.sequenceIntegers(images)
        pulled = [rectify.invertIso(cert, b[0]) for b in integer_order]
        ordering = Ordering.of(spec, pulled)
        logger.debug(f'Pulled back {integer_order} to {ordering} mod {p}')
        return verifiedResult(ordering, RECTIFIED_PULLBACK, certificate=cert)

    logger.warning(f'Rectification failed for {len(residues)} residues mod '
                   f'{p}; falling back to backtracking')
    return backtrackingResult(spec, elems, force=force)
