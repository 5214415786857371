"""Seeded random test data.

Every randomized corpus (command-line `--random`, unit and integration
tests) is drawn from a `numpy.random.Generator` created here, so a seed
fully determines the data.
"""
import logging

import numpy as np

from validorder import groups
from validorder.groups import GroupSpec

# create logger
logger = logging.getLogger(__name__)


def generator(seed=None):
    return np.random.default_rng(seed)


def randomIntegerSet(rng, size, magnitude):
    """`size` distinct nonzero integers in [-magnitude, magnitude]."""
    size = min(size, 2 * magnitude)
    values = set()
    while len(values) < size:
        draw = rng.integers(-magnitude, magnitude, size=size, endpoint=True)
        for v in draw.tolist():
            if v != 0 and len(values) < size:
                values.add(v)
    return sorted(values)


def randomResidueSet(rng, p, size, with_zero=False):
    """`size` distinct residues from [1, p), plus 0 when `with_zero`."""
    size = min(size, p - 1)
    picks = rng.choice(p - 1, size=size, replace=False) + 1
    residues = sorted(int(x) for x in picks)
    if with_zero:
        residues = [0] + residues
    return residues


def randomElementSet(rng, spec: GroupSpec, size, magnitude=10):
    """`size` distinct nonzero elements of `spec`.

    Integer coordinates are drawn from [-magnitude, magnitude]; modular ones
    uniformly. Stops early if the group (or box) is too small.
    """
    values = set()
    attempts = 0
    while len(values) < size and attempts < 100 * (size + 1):
        attempts += 1
        raw = []
        for m in spec.moduli:
            if m is None:
                raw.append(int(rng.integers(-magnitude, magnitude,
                                            endpoint=True)))
            else:
                raw.append(int(rng.integers(0, m)))
        a = groups.canonicalize(spec, raw)
        if not groups.isZero(a):
            values.add(a)
    return sorted(values)


def randomOrdering(rng, spec: GroupSpec, size, magnitude=10):
    """Random arrangement of a random set of nonzero elements."""
    elems = randomElementSet(rng, spec, size, magnitude)
    order = rng.permutation(len(elems)).tolist()
    return [elems[i] for i in order]


def randomSets(spec: GroupSpec, count, size, seed=None, magnitude=10):
    """`count` random sets of `size` elements, for the command line."""
    rng = generator(seed)
    logger.debug(f'Generating {count} sets of size {size} in {spec} with '
                 f'seed {seed}')
    return [randomElementSet(rng, spec, size, magnitude)
            for _ in range(count)]
