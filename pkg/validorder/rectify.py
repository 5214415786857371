"""Rectification of small subsets of F_p by dilation.

For a set A' of residues containing 0, a dilation lambda and the minimal
cyclic window W holding lambda * A' define a map into Z: send each residue to
its representative in W, shifted so that 0 goes to 0. When
ell * width(W) < p, two ell-fold sums of representatives differ by less than
p, so they are congruent exactly when they are equal, and the map is an
ell-Freiman isomorphism. Because 0 maps to 0 it is also a k-Freiman
isomorphism for every k <= ell.

`findDilation` scans lambda = 1, 2, ... and returns the first accepting
certificate; `freimanVerify` re-checks a certificate by brute force.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from validorder import groups
from validorder.config_loader import LoadConfig
from validorder.errors import GroupError, GuardExceededError
from validorder.groups import GroupSpec

# create logger
logger = logging.getLogger(__name__)

# products lambda * a stay below 2^62 for p below this
_VECTOR_PRIME_LIMIT = 2**31


@dataclass(frozen=True)
class RectCertificate:
    """Explicit ell-Freiman isomorphism from a subset of F_p into Z.

    `mapping` holds (source residue, integer image) pairs sorted by source.
    """
    p: int
    ell: int
    lam: int
    window_start: int
    width: int
    mapping: Tuple[Tuple[int, int], ...]

    @cached_property
    def forward(self) -> Dict[int, int]:
        return dict(self.mapping)

    @cached_property
    def inverse(self) -> Dict[int, int]:
        return {image: source for source, image in self.mapping}

    @property
    def domain(self):
        return [source for source, _ in self.mapping]

    @property
    def image(self):
        return [image for _, image in self.mapping]

    def representative(self, residue):
        """Integer in [window_start, window_start + p) congruent to residue."""
        return self.window_start + (residue - self.window_start) % self.p

    def checkStructure(self):
        """Check the algebraic conditions that make the map an isomorphism.

        Returns
        -------
        bool
            True when ell * width < p, 0 maps to 0, the images are distinct
            and span exactly `width`, and every image is the shifted window
            representative of the dilated source.
        """
        if not self.ell * self.width < self.p:
            return False
        if self.forward.get(0) != 0:
            return False
        images = self.image
        if len(set(images)) != len(images):
            return False
        if max(images) - min(images) != self.width:
            return False
        r0 = self.representative(0)
        for source, image in self.mapping:
            rep = self.representative(self.lam * source % self.p)
            if not self.window_start <= rep <= self.window_start + self.width:
                return False
            if image != rep - r0:
                return False
        return True

    def toDict(self):
        return {
            'p': self.p,
            'ell': self.ell,
            'lambda': self.lam,
            'window_start': self.window_start,
            'width': self.width,
            'mapping': [[source, image] for source, image in self.mapping],
        }

    @classmethod
    def fromDict(cls, data):
        try:
            cert = cls(p=int(data['p']),
                       ell=int(data['ell']),
                       lam=int(data['lambda']),
                       window_start=int(data['window_start']),
                       width=int(data['width']),
                       mapping=tuple(sorted(
                           (int(s), int(i)) for s, i in data['mapping'])))
        except (KeyError, TypeError, ValueError) as e:
            logger.error(f'Malformed certificate: {e}')
            raise GroupError(f'Malformed certificate: {e}')
        if cert.p < 2 or cert.ell < 1 or not cert.mapping:
            logger.error(f'Malformed certificate: {data}')
            raise GroupError(f'Malformed certificate: {data}')
        return cert


def _checkPrime(p):
    # raises GroupError on composite or out-of-range moduli
    GroupSpec.primeField(p)


def _residues(values, p):
    spec = GroupSpec.primeField(p)
    return sorted({groups.canonicalize(spec, v)[0] for v in values})


def minCyclicWindow(residues: Iterable[int], p: int) -> Tuple[int, int]:
    """Minimal-width cyclic arc of Z_p containing every residue.

    Parameters
    ----------
    residues : iterable of int
        Nonempty set of residues in [0, p).
    p : int
        Modulus.

    Returns
    -------
    tuple of int
        `(start, width)`: the arc starts right after the largest cyclic gap
        and covers `width + 1` consecutive residues. Among equally large
        gaps the one met first when walking up from the smallest residue
        wins.

    Raises
    ------
    ValueError
        If `residues` is empty.
    """
    points = np.array(sorted(set(residues)), dtype=np.int64)
    if points.size == 0:
        raise ValueError('minCyclicWindow needs at least one residue')
    gaps = np.empty_like(points)
    gaps[:-1] = np.diff(points)
    gaps[-1] = points[0] + p - points[-1]
    i = int(np.argmax(gaps))
    start = int(points[(i + 1) % points.size])
    width = p - int(gaps[i])
    return start, width


def levBound(p: int, ell: int) -> int:
    """Ceiling of log p / log ell, by exact integer powers.

    Returns the least k with ell**k >= p.
    """
    if ell < 2:
        raise ValueError(f'ell must be at least 2, got {ell}')
    k, power = 0, 1
    while power < p:
        power *= ell
        k += 1
    return k


def _firstLambdaVectorised(points, p, ell, chunk):
    arr = np.array(points, dtype=np.int64)
    for lo in range(1, p, chunk):
        lambdas = np.arange(lo, min(lo + chunk, p), dtype=np.int64)
        dilated = np.sort((lambdas[:, None] * arr[None, :]) % p, axis=1)
        gaps = np.empty_like(dilated)
        gaps[:, :-1] = np.diff(dilated, axis=1)
        gaps[:, -1] = dilated[:, 0] + p - dilated[:, -1]
        widths = p - gaps.max(axis=1)
        accepted = np.flatnonzero(ell * widths < p)
        if accepted.size:
            return int(lambdas[accepted[0]])
    return None


def _firstLambdaScalar(points, p, ell):
    for lam in range(1, p):
        _, width = minCyclicWindow((lam * a % p for a in points), p)
        if ell * width < p:
            return lam
    return None


def certificateFor(points, p, ell, lam):
    """Build the certificate of dilation `lam` for the residue set `points`."""
    dilated = {a: lam * a % p for a in points}
    start, width = minCyclicWindow(dilated.values(), p)

    def representative(residue):
        return start + (residue - start) % p

    r0 = representative(0)
    mapping = tuple(sorted(
        (a, representative(d) - r0) for a, d in dilated.items()))
    return RectCertificate(p=p, ell=ell, lam=lam, window_start=start,
                           width=width, mapping=mapping)


class DilationSearch:
    """Ascending scan over dilations; the smallest accepting lambda wins."""

    CONFIG = LoadConfig().Guards()
    MAX_PRIME = int(CONFIG['rectify_max_prime'])
    CHUNK = int(LoadConfig().Workers()['rectify_chunk'])

    def __init__(self, p, ell, force=False, chunk=None):
        _checkPrime(p)
        if ell < 2:
            raise ValueError(f'ell must be at least 2, got {ell}')
        if p > self.MAX_PRIME:
            if not force:
                msg = (f'p = {p} exceeds the dilation-scan guard '
                       f'{self.MAX_PRIME}; pass force to scan anyway')
                logger.error(msg)
                raise GuardExceededError(msg)
            logger.warning(f'Scanning dilations for p = {p} beyond the guard')
        self.p = p
        self.ell = ell
        self.chunk = chunk or self.CHUNK

    def run(self, points) -> Optional[RectCertificate]:
        p, ell = self.p, self.ell
        if p < _VECTOR_PRIME_LIMIT:
            lam = _firstLambdaVectorised(points, p, ell, self.chunk)
        else:
            lam = _firstLambdaScalar(points, p, ell)
        if lam is None:
            return None
        cert = certificateFor(points, p, ell, lam)
        logger.debug(f'Accepted lambda = {lam} for p = {p}, ell = {ell}: '
                     f'window [{cert.window_start}, +{cert.width}]')
        return cert


def findDilation(Aprime: Iterable[int], p: int, ell: int,
                 force=False) -> Optional[RectCertificate]:
    """Find the first dilation rectifying `Aprime` at order `ell`.

    Parameters
    ----------
    Aprime : iterable of int
        Residues mod p; must contain 0.
    p : int
        Prime modulus.
    ell : int
        Freiman order, at least 2.
    force : bool, optional
        Lift the prime-size guard, by default False.

    Returns
    -------
    RectCertificate or None
        Certificate for the smallest accepting lambda, or None when no
        lambda in [1, p-1] gives ell * width < p. Dilations alone do not
        reach every set within levBound(p, ell), e.g. {0,1,2,5,12} mod 19
        at order 2, so None is possible below the bound too.

    Raises
    ------
    GroupError
        If p is not prime or 0 is missing from `Aprime`.
    """
    search = DilationSearch(p, ell, force=force)
    points = _residues(Aprime, p)
    try:
        if 0 not in points:
            raise GroupError('The set to rectify must contain 0')
    except GroupError as e:
        logger.error(str(e))
        raise

    cert = search.run(points)
    if cert is None:
        if len(points) <= levBound(p, ell):
            msg = (f'No rectifying dilation for {points} mod {p} at order '
                   f'{ell}, although the set is within the rectification '
                   'bound')
            logger.error(msg)
        else:
            logger.info(f'No rectifying dilation for {len(points)} residues '
                        f'mod {p} at order {ell}')
    return cert


def applyIso(cert: RectCertificate, a: int) -> int:
    try:
        return cert.forward[a]
    except KeyError:
        raise GroupError(f'{a} is not in the certificate domain')


def invertIso(cert: RectCertificate, b: int) -> int:
    try:
        return cert.inverse[b]
    except KeyError:
        raise GroupError(f'{b} is not in the certificate image')


def _sumsCorrespond(pairs, m, p):
    # the relation (sum of sources mod p, sum of images) must be a bijection
    image_of = {}
    source_of = {}
    for combo in itertools.combinations_with_replacement(pairs, m):
        residue = sum(a for a, _ in combo) % p
        value = sum(b for _, b in combo)
        if image_of.setdefault(residue, value) != value:
            return False
        if source_of.setdefault(value, residue) != residue:
            return False
    return True


def freimanVerify(cert: RectCertificate, ell: int, budget=None,
                  force=False) -> bool:
    """Brute-force check that `cert` is an ell-Freiman isomorphism.

    Every pair of ell-element multisets of the domain is covered: sums agree
    mod p exactly when image sums agree in Z. With 0 mapped to 0 this also
    covers every smaller order, by padding with zeros; otherwise each order
    1..ell is checked on its own.

    Raises
    ------
    GuardExceededError
        If k**(2 * ell) exceeds the budget, k being the domain size.
    """
    if budget is None:
        budget = int(LoadConfig().Guards()['freiman_verify_budget'])
    k = len(cert.mapping)
    if k**(2 * ell) > budget and not force:
        msg = (f'Exhaustive check of {k} points at order {ell} exceeds the '
               f'budget {budget}')
        logger.error(msg)
        raise GuardExceededError(msg)
    if len(set(cert.image)) != k:
        return False
    if cert.forward.get(0) == 0:
        orders = [ell]
    else:
        orders = range(1, ell + 1)
    return all(_sumsCorrespond(cert.mapping, m, cert.p) for m in orders)
