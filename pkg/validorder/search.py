"""Brute-force oracles: backtracking construction, counting and sweeps.

The depth-first search walks orderings in lexicographic order of canonical
coordinates and prunes any prefix whose newest partial sum repeats an
earlier one, so the first ordering it completes is the lexicographically
first valid one. In two-sided mode s_0 = 0 takes part in the comparison as
well, except that the final sum may return to 0.

`sweep` runs a chosen engine over every nonempty subset of G \\ {0} for
G = F_p (or Z_n), enumerated as bitmasks over the p - 1 nonzero elements.
Chunks of the mask space may run in worker processes; their partial reports
merge associatively, so the result does not depend on the split.
"""
from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from validorder import groups, verify
from validorder.config_loader import LoadConfig
from validorder.errors import (GuardExceededError, NoValidOrderingError,
                               SequencerUnavailableError)
from validorder.groups import GroupSpec
from validorder.verify import Ordering

# create logger
logger = logging.getLogger(__name__)

ENGINES = ('backtracking', 'pipeline')


class Backtracker:
    """Depth-first search over orderings of a set of nonzero elements.

    `nodes` counts every prefix extended during the last call.
    """

    CONFIG = LoadConfig().Guards()
    MAX_SIZE = int(CONFIG['backtrack_max_size'])
    MAX_COUNT_SIZE = int(CONFIG['count_max_size'])

    def __init__(self, spec: GroupSpec, two_sided=False, force=False):
        self.spec = spec
        self.two_sided = two_sided
        self.force = force
        self.nodes = 0

    def _prepare(self, A, limit):
        elems = groups.elements(self.spec, A)
        verify.checkElementSet(self.spec, elems)
        if len(elems) > limit:
            if not self.force:
                msg = (f'{len(elems)} elements exceed the search guard of '
                       f'{limit}; pass force to search anyway')
                logger.error(msg)
                raise GuardExceededError(msg)
            logger.warning(f'Searching {len(elems)} elements beyond the '
                           f'guard of {limit}')
        return sorted(elems)

    def _walk(self, elems, stop_at_first):
        spec = self.spec
        m = len(elems)
        origin = groups.zero(spec)
        seen = {origin} if self.two_sided else set()
        used = [False] * m
        prefix = []
        found = []
        count = 0

        def extend(s):
            nonlocal count
            if len(prefix) == m:
                count += 1
                if stop_at_first:
                    found.append(tuple(prefix))
                return stop_at_first
            last = len(prefix) == m - 1
            for i in range(m):
                if used[i]:
                    continue
                t = groups.add(spec, s, elems[i])
                if t in seen and not (last and self.two_sided and
                                      t == origin):
                    continue
                self.nodes += 1
                used[i] = True
                prefix.append(elems[i])
                fresh = t not in seen
                if fresh:
                    seen.add(t)
                done = extend(t)
                if fresh:
                    seen.discard(t)
                prefix.pop()
                used[i] = False
                if done:
                    return True
            return False

        extend(origin)
        return found, count

    def first(self, A) -> Optional[Ordering]:
        """Lexicographically first valid ordering of A, or None."""
        elems = self._prepare(A, self.MAX_SIZE)
        self.nodes = 0
        found, _ = self._walk(elems, stop_at_first=True)
        logger.debug(f'Backtracking over {len(elems)} elements of '
                     f'{self.spec}: {self.nodes} nodes')
        if not found:
            return None
        return Ordering(self.spec, found[0])

    def count(self, A) -> int:
        """Exact number of valid orderings of A."""
        elems = self._prepare(A, self.MAX_COUNT_SIZE)
        self.nodes = 0
        _, count = self._walk(elems, stop_at_first=False)
        return count


def backtrackOrder(A, spec: GroupSpec, two_sided=False,
                   force=False) -> Optional[Ordering]:
    """Lexicographically first valid (optionally two-sided) ordering of A.

    Raises
    ------
    GuardExceededError
        If |A| exceeds the configured guard and `force` is not set.
    """
    return Backtracker(spec, two_sided=two_sided, force=force).first(A)


def countValidOrderings(A, spec: GroupSpec, two_sided=False,
                        force=False) -> int:
    return Backtracker(spec, two_sided=two_sided, force=force).count(A)


@dataclass
class SizeStats:
    subset_count: int = 0
    all_sequenceable: bool = True
    total_backtrack_nodes: int = 0
    max_backtrack_nodes: int = 0
    elapsed: float = 0.0

    def merge(self, other):
        return SizeStats(
            subset_count=self.subset_count + other.subset_count,
            all_sequenceable=self.all_sequenceable and other.all_sequenceable,
            total_backtrack_nodes=(self.total_backtrack_nodes +
                                   other.total_backtrack_nodes),
            max_backtrack_nodes=max(self.max_backtrack_nodes,
                                    other.max_backtrack_nodes),
            elapsed=self.elapsed + other.elapsed)

    def toDict(self, include_timing=False):
        data = {
            'subset_count': self.subset_count,
            'all_sequenceable': self.all_sequenceable,
            'total_backtrack_nodes': self.total_backtrack_nodes,
            'max_backtrack_nodes': self.max_backtrack_nodes,
        }
        if include_timing:
            data['elapsed'] = round(self.elapsed, 6)
        return data


@dataclass
class SweepReport:
    """Outcome of a conjecture sweep; `p` is the group modulus."""
    p: int
    group: str
    engine: str
    max_size: int
    two_sided: bool = False
    per_size: Dict[int, SizeStats] = field(default_factory=dict)
    counterexamples: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def holds(self):
        return not self.counterexamples

    @property
    def subset_count(self):
        return sum(s.subset_count for s in self.per_size.values())

    def merge(self, other):
        per_size = dict(self.per_size)
        for size, stats in other.per_size.items():
            per_size[size] = per_size[size].merge(stats) \
                if size in per_size else stats
        return SweepReport(p=self.p,
                           group=self.group,
                           engine=self.engine,
                           max_size=self.max_size,
                           two_sided=self.two_sided,
                           per_size=per_size,
                           counterexamples=sorted(
                               self.counterexamples + other.counterexamples,
                               key=lambda c: (len(c), c)))

    def toDict(self, include_timing=False):
        return {
            'p': self.p,
            'group': self.group,
            'engine': self.engine,
            'max_size': self.max_size,
            'two_sided': self.two_sided,
            'subset_count': self.subset_count,
            'per_size': {
                str(size): self.per_size[size].toDict(include_timing)
                for size in sorted(self.per_size)
            },
            'counterexamples': [list(c) for c in self.counterexamples],
        }

    def toCsvRows(self, include_timing=False):
        header = ['p', 'group', 'engine', 'two_sided', 'size',
                  'subset_count', 'all_sequenceable', 'total_backtrack_nodes',
                  'max_backtrack_nodes']
        if include_timing:
            header.append('elapsed')
        rows = [header]
        for size in sorted(self.per_size):
            stats = self.per_size[size]
            row = [self.p, self.group, self.engine, self.two_sided, size,
                   stats.subset_count, stats.all_sequenceable,
                   stats.total_backtrack_nodes, stats.max_backtrack_nodes]
            if include_timing:
                row.append(round(stats.elapsed, 6))
            rows.append(row)
        return rows


def _sweepGroup(modulus, cyclic):
    if cyclic:
        return GroupSpec.cyclic(modulus)
    return GroupSpec.primeField(modulus)


def _runEngine(spec, subset, engine, two_sided, force):
    """Return (sequenceable, nodes) for one subset."""
    if engine == 'backtracking':
        backtracker = Backtracker(spec, two_sided=two_sided, force=force)
        ordering = backtracker.first(subset)
        return ordering is not None, backtracker.nodes
    # imported here: fpseq depends on this module
    from validorder import fpseq
    try:
        result = fpseq.sequenceModP(subset, spec.modulus, force=force)
    except NoValidOrderingError:
        return False, 0
    return True, result.nodes


def _sweepRange(modulus, cyclic, engine, two_sided, max_size, lo, hi,
                force=False):
    """Partial report for the masks in [lo, hi)."""
    spec = _sweepGroup(modulus, cyclic)
    report = SweepReport(p=modulus, group=str(spec), engine=engine,
                         max_size=max_size, two_sided=two_sided)
    for mask in range(lo, hi):
        size = bin(mask).count('1')
        if size > max_size:
            continue
        subset = [i + 1 for i in range(modulus - 1) if mask >> i & 1]
        started = time.perf_counter()
        ok, nodes = _runEngine(spec, subset, engine, two_sided, force)
        elapsed = time.perf_counter() - started
        stats = report.per_size.setdefault(size, SizeStats())
        stats.subset_count += 1
        stats.total_backtrack_nodes += nodes
        stats.max_backtrack_nodes = max(stats.max_backtrack_nodes, nodes)
        stats.elapsed += elapsed
        if not ok:
            stats.all_sequenceable = False
            report.counterexamples.append(tuple(subset))
            logger.critical(f'No valid ordering for {subset} in {spec}')
    return report


def _chunks(total, parts):
    step = max(1, math.ceil(total / parts))
    return [(lo, min(lo + step, total)) for lo in range(1, total, step)]


def sweep(p: int, max_size=None, engine='backtracking', two_sided=False,
          cyclic=False, workers=None, force=False) -> SweepReport:
    """Run `engine` on every nonempty subset of G \\ {0} up to `max_size`.

    Parameters
    ----------
    p : int
        Prime modulus of F_p, or the order of Z_p when `cyclic` is set.
    max_size : int, optional
        Largest subset size, by default p - 1.
    engine : str
        `backtracking` or `pipeline`.
    two_sided : bool
        Require two-sided orderings (backtracking engine only).
    cyclic : bool
        Sweep Z_p instead of F_p; p need not be prime.
    workers : int, optional
        Worker processes, by default from config.
    force : bool
        Lift the modulus guard.

    Returns
    -------
    SweepReport
        Per-size statistics and every subset with no (two-sided) valid
        ordering.
    """
    if engine not in ENGINES:
        raise ValueError(f'Unknown engine {engine!r}; choose from {ENGINES}')
    if engine == 'pipeline' and (cyclic or two_sided):
        raise SequencerUnavailableError(
            'The pipeline engine sequences F_p only and does not search '
            'for two-sided orderings')
    spec = _sweepGroup(p, cyclic)
    guard = int(LoadConfig().Guards()['sweep_max_prime'])
    if p > guard:
        if not force:
            msg = (f'Sweeping {spec} exceeds the guard p <= {guard}; pass '
                   'force to sweep anyway')
            logger.error(msg)
            raise GuardExceededError(msg)
        logger.warning(f'Sweeping {spec} beyond the guard p <= {guard}')
    if max_size is None:
        max_size = p - 1
    max_size = max(0, min(max_size, p - 1))
    if workers is None:
        workers = int(LoadConfig().Workers()['sweep_workers'])

    total = 1 << (p - 1)
    report = SweepReport(p=p, group=str(spec), engine=engine,
                         max_size=max_size, two_sided=two_sided)
    logger.info(f'Sweeping {total - 1} subsets of {spec} \\ {{0}} with the '
                f'{engine} engine')
    if workers <= 1:
        parts = [_sweepRange(p, cyclic, engine, two_sided, max_size, 1,
                             total, force)]
    else:
        ranges = _chunks(total, 4 * workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                _sweepRange, *zip(*[(p, cyclic, engine, two_sided, max_size,
                                     lo, hi, force) for lo, hi in ranges])))
    for part in parts:
        report = report.merge(part)
    for size in sorted(report.per_size):
        expected = math.comb(p - 1, size)
        if report.per_size[size].subset_count != expected:
            logger.error(f'Size {size}: {report.per_size[size].subset_count} '
                         f'subsets counted, expected {expected}')
    if report.counterexamples:
        logger.critical(f'{len(report.counterexamples)} subsets of {spec} '
                        'have no valid ordering')
    return report
