"""Abelian groups supported by validorder and their element arithmetic.

A group is described by a `GroupSpec`: the integers Z, a prime field F_p, a
cyclic group Z_n, or a (possibly nested) product of these. Products are
flattened at construction, so every element is a plain tuple of ints with one
coordinate per factor. Modular coordinates live in [0, m); integer
coordinates are unconstrained apart from the ingestion bound, which keeps any
sum of up to 2**16 elements inside a signed 128-bit accumulator.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple, Union

from sympy import isprime

from validorder.errors import GroupError, ParseError

# create logger
logger = logging.getLogger(__name__)

Element = Tuple[int, ...]

INTEGERS = 'integers'
PRIME_FIELD = 'prime_field'
CYCLIC = 'cyclic'
PRODUCT = 'product'

MAX_PRIME = 2**40
MAX_DEPTH = 4
MAX_COORDS = 8
MAX_SUMMANDS = 2**16
INGESTION_BOUND = 2**127 // MAX_SUMMANDS - 1


@dataclass(frozen=True)
class GroupSpec:
    """Ambient abelian group.

    Build instances through the class constructors (`integers`,
    `primeField`, `cyclic`, `product`, `lattice`) rather than directly.
    """
    kind: str
    modulus: Optional[int] = None
    components: Tuple['GroupSpec', ...] = ()

    def __post_init__(self):
        if self.kind == INTEGERS:
            if self.modulus is not None or self.components:
                raise GroupError('Z takes no modulus or components')
        elif self.kind == PRIME_FIELD:
            p = self.modulus
            if not isinstance(p, int) or not 2 <= p < MAX_PRIME:
                raise GroupError(
                    f'Prime modulus must satisfy 2 <= p < 2^40, got {p}')
            if not isprime(p):
                raise GroupError(f'Modulus {p} is not prime')
        elif self.kind == CYCLIC:
            n = self.modulus
            if not isinstance(n, int) or n < 2:
                raise GroupError(f'Cyclic order must be >= 2, got {n}')
        elif self.kind == PRODUCT:
            if not self.components:
                raise GroupError('A product needs at least one component')
            if self.depth > MAX_DEPTH:
                raise GroupError(
                    f'Product nesting depth {self.depth} exceeds {MAX_DEPTH}')
            if self.rank > MAX_COORDS:
                raise GroupError(
                    f'Product has {self.rank} coordinates, at most '
                    f'{MAX_COORDS} are supported')
        else:
            raise GroupError(f'Unknown group kind {self.kind!r}')

    @classmethod
    def integers(cls):
        return cls(INTEGERS)

    @classmethod
    def primeField(cls, p):
        return cls(PRIME_FIELD, modulus=p)

    @classmethod
    def cyclic(cls, n):
        return cls(CYCLIC, modulus=n)

    @classmethod
    def product(cls, *components):
        return cls(PRODUCT, components=tuple(components))

    @classmethod
    def lattice(cls, d):
        """Z^d; `lattice(1)` is Z itself."""
        if d < 1:
            raise GroupError(f'Z^d needs d >= 1, got {d}')
        if d == 1:
            return cls.integers()
        return cls.product(*[cls.integers()] * d)

    @cached_property
    def moduli(self) -> Tuple[Optional[int], ...]:
        """One entry per flattened coordinate; `None` marks a Z coordinate."""
        if self.kind == INTEGERS:
            return (None, )
        if self.kind in (PRIME_FIELD, CYCLIC):
            return (self.modulus, )
        return tuple(m for c in self.components for m in c.moduli)

    @property
    def rank(self):
        return len(self.moduli)

    @cached_property
    def depth(self):
        if self.kind != PRODUCT:
            return 0
        return 1 + max(c.depth for c in self.components)

    @property
    def isFinite(self):
        return all(m is not None for m in self.moduli)

    @property
    def endsWithIntegers(self):
        """True for products whose last flattened coordinate is Z."""
        return self.kind == PRODUCT and self.rank >= 2 and \
            self.moduli[-1] is None

    def splitLast(self):
        """Return H for a group of the form H x Z.

        Raises
        ------
        GroupError
            If the group is not a product ending in Z.
        """
        if not self.endsWithIntegers:
            raise GroupError(f'{self} is not of the form H x Z')
        leaves = list(self.leaves())
        head = leaves[:-1]
        if len(head) == 1:
            return head[0]
        return GroupSpec.product(*head)

    def leaves(self):
        if self.kind == PRODUCT:
            for c in self.components:
                yield from c.leaves()
        else:
            yield self

    def __str__(self):
        if self.kind == INTEGERS:
            return 'Z'
        if self.kind == PRIME_FIELD:
            return f'F_{self.modulus}'
        if self.kind == CYCLIC:
            return f'Z_{self.modulus}'
        if all(m is None for m in self.moduli):
            return f'Z^{self.rank}'
        return ' x '.join(str(c) for c in self.components)


def canonicalize(spec: GroupSpec, raw: Union[int, Sequence[int]]) -> Element:
    """Reduce raw coordinates to the canonical element of `spec`.

    Parameters
    ----------
    spec : GroupSpec
        Ambient group.
    raw : int or sequence of int
        Raw coordinates; a bare int is accepted for rank-1 groups.

    Returns
    -------
    Element
        Modular coordinates reduced into [0, m), integer ones unchanged.

    Raises
    ------
    GroupError
        On a coordinate-count mismatch or an integer coordinate beyond the
        ingestion bound.
    """
    if isinstance(raw, int):
        raw = (raw, )
    raw = tuple(raw)
    if len(raw) != spec.rank:
        raise GroupError(f'Expected {spec.rank} coordinates for {spec}, '
                         f'got {len(raw)}: {raw}')
    coords = []
    for x, m in zip(raw, spec.moduli):
        if isinstance(x, bool) or not isinstance(x, int):
            try:
                x = int(x)
            except (TypeError, ValueError):
                raise GroupError(f'Coordinate {x!r} is not an integer')
        if m is None:
            if abs(x) > INGESTION_BOUND:
                raise GroupError(
                    f'Coordinate {x} exceeds the ingestion bound 2^111')
            coords.append(x)
        else:
            coords.append(x % m)
    return tuple(coords)


def elements(spec: GroupSpec, values: Iterable) -> list:
    """Canonicalize every value of `values`, keeping the given order."""
    return [canonicalize(spec, v) for v in values]


def zero(spec: GroupSpec) -> Element:
    return (0, ) * spec.rank


def isZero(a: Element) -> bool:
    return not any(a)


def _checkOperand(spec, a):
    """Reject operands of the wrong rank or with a modular coordinate outside
    [0, m), i.e. elements that are not canonical in `spec`."""
    if len(a) != spec.rank or any(m is not None and not 0 <= x < m
                                  for x, m in zip(a, spec.moduli)):
        raise GroupError(f'Element {a} does not belong to {spec}')


def add(spec: GroupSpec, a: Element, b: Element) -> Element:
    _checkOperand(spec, a)
    _checkOperand(spec, b)
    return tuple((x + y) % m if m else x + y
                 for x, y, m in zip(a, b, spec.moduli))


def neg(spec: GroupSpec, a: Element) -> Element:
    _checkOperand(spec, a)
    return tuple(-x % m if m else -x for x, m in zip(a, spec.moduli))


def sub(spec: GroupSpec, a: Element, b: Element) -> Element:
    return add(spec, a, neg(spec, b))


def scale(spec: GroupSpec, a: Element, k: int) -> Element:
    """Multiply `a` by the integer `k` coordinatewise."""
    _checkOperand(spec, a)
    return tuple(x * k % m if m else x * k for x, m in zip(a, spec.moduli))


def total(spec: GroupSpec, elems: Iterable[Element]) -> Element:
    s = zero(spec)
    for e in elems:
        s = add(spec, s, e)
    return s


# TEXTUAL SYNTAX
_LEAF_PATTERN = re.compile(
    r'^(?:(?P<z>Z)(?:\^(?P<d>\d+))?|(?P<f>F)_?(?P<p>\d+)|Z_(?P<n>\d+))$')


def parseGroup(text: str) -> GroupSpec:
    """Parse `Z`, `Z^d`, `F_p`, `Z_n` or a product of these joined by `x`.

    Examples: ``"Z^2"``, ``"F_13"``, ``"Z_6 x Z"``.
    """
    factors = [f.strip() for f in re.split(r'\s+[x×*]\s+|\s*×\s*', text)]
    leaves = []
    for factor in factors:
        match = _LEAF_PATTERN.match(factor)
        if match is None:
            raise ParseError(f'Cannot parse group factor {factor!r}')
        if match.group('z'):
            d = int(match.group('d') or 1)
            leaves.extend([GroupSpec.integers()] * d)
        elif match.group('f'):
            leaves.append(GroupSpec.primeField(int(match.group('p'))))
        else:
            leaves.append(GroupSpec.cyclic(int(match.group('n'))))
    if not leaves:
        raise ParseError(f'Empty group description {text!r}')
    if len(leaves) == 1:
        return leaves[0]
    return GroupSpec.product(*leaves)


def parseElement(spec: GroupSpec, text: str) -> Element:
    text = text.strip()
    if text.startswith('(') and text.endswith(')'):
        parts = [t.strip() for t in text[1:-1].split(',')]
    elif spec.rank == 1:
        parts = [text]
    else:
        raise ParseError(
            f'Elements of {spec} need tuple syntax like (0,1), got {text!r}')
    try:
        raw = [int(t) for t in parts]
    except ValueError:
        raise ParseError(f'Cannot parse element {text!r}')
    return canonicalize(spec, raw)


def parseSet(spec: GroupSpec, text: str) -> list:
    """Parse a separated list of elements, preserving order.

    Rank-1 elements may be separated by commas or semicolons; tuples force
    semicolons.
    """
    text = text.strip()
    if not text:
        return []
    if '(' in text:
        tokens = text.split(';')
    else:
        tokens = re.split(r'[;,]', text)
    tokens = [t.strip() for t in tokens]
    if any(not t for t in tokens):
        raise ParseError(f'Empty entry in set {text!r}')
    return [parseElement(spec, t) for t in tokens]


def formatElement(spec: GroupSpec, a: Element) -> str:
    if spec.rank == 1:
        return str(a[0])
    return '(' + ','.join(str(x) for x in a) + ')'


def formatSet(spec: GroupSpec, elems: Iterable[Element]) -> str:
    sep = ',' if spec.rank == 1 else ';'
    return sep.join(formatElement(spec, a) for a in elems)


def toJsonElement(spec: GroupSpec, a: Element):
    """Bare int for rank-1 groups, list of ints otherwise."""
    if spec.rank == 1:
        return a[0]
    return list(a)
