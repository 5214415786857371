import csv
import io
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

from validorder import fpseq, groups, productseq, rectify, search, verify
from validorder.config_loader import LoadConfig
from validorder.errors import GuardExceededError, NoValidOrderingError
from validorder.groups import CYCLIC, PRIME_FIELD, GroupSpec
from validorder.rectify import RectCertificate
from validorder.verify import Ordering

# create logger
logger = logging.getLogger(__name__)

COMMANDS = ('order', 'verify', 'rectify', 'sweep', 'count')
OUTPUTS = ('human', 'json', 'csv')

EXIT_OK = 0
EXIT_NO_ORDERING = 1
EXIT_INPUT_ERROR = 2


@dataclass
class JobSpec:
    """Everything one command-line invocation asks for.

    `sets` holds canonical elements; for `verify` each set is read as an
    ordering and keeps its order.
    """
    command: str
    group: GroupSpec
    sets: List[list] = field(default_factory=list)
    engine: Optional[str] = None
    output: str = 'human'
    seed: Optional[int] = None
    ell: Optional[int] = None
    max_size: Optional[int] = None
    force: bool = False
    two_sided: bool = False
    workers: Optional[int] = None
    timings: bool = False
    certificates: List[RectCertificate] = field(default_factory=list)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f'Unknown command {self.command!r}')
        if self.output not in OUTPUTS:
            raise ValueError(f'Unknown output format {self.output!r}')


class Interface:
    """The `Interface` class sits between the command line and the library.
    It dispatches a `JobSpec` to the matching operation, runs independent
    sets on a thread pool, and renders the collected records in the
    requested format, always in input order.
    """

    CONFIG = LoadConfig().Workers()
    BATCH_WORKERS = int(CONFIG['batch_workers'])

    def __init__(self, workers=None):
        self.workers = workers or self.BATCH_WORKERS
        self._handlers = {
            'order': self.orderSet,
            'verify': self.verifyOrdering,
            'rectify': self.rectifySet,
            'count': self.countSet,
        }

    def run(self, job: JobSpec):
        """Run `job` and return `(exit code, rendered report)`."""
        logger.info(f'Running {job.command} over {job.group}')
        if job.command == 'sweep':
            report = self.runSweep(job)
            code = EXIT_OK if report.holds else EXIT_NO_ORDERING
            return code, self.renderSweep(job, report)

        kind, handler, items = job.command, self._handlers[job.command], job.sets
        if job.certificates:
            kind, handler, items = 'certificate', self.checkCertificate, \
                job.certificates
        if self.workers > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                records = list(pool.map(lambda s: handler(job, s), items))
        else:
            records = [handler(job, s) for s in items]

        code = EXIT_OK
        if any(r.get('error') == 'no valid ordering' for r in records):
            code = EXIT_NO_ORDERING
        return code, self.render(job, records, kind)

    # COMMANDS
    def orderSet(self, job, elems):
        spec = job.group
        record = {'set': [groups.toJsonElement(spec, a) for a in elems]}
        try:
            if job.engine == 'backtracking':
                verify.checkElementSet(spec, elems)
                if not elems:
                    result = fpseq.verifiedResult(Ordering(spec, ()),
                                                  fpseq.TRIVIAL)
                else:
                    result = fpseq.backtrackingResult(spec, elems,
                                                      force=job.force)
            else:
                result = productseq.sequenceSet(elems, spec, force=job.force)
        except NoValidOrderingError as e:
            logger.critical(f'COUNTEREXAMPLE: {e}')
            record.update({'error': 'no valid ordering', 'ordering': None})
            return record
        record.update(result.toDict())
        return record

    def verifyOrdering(self, job, elems):
        ordering = Ordering(job.group, tuple(elems))
        report = verify.analyze(ordering)
        record = {
            'group': str(job.group),
            'ordering': ordering.toJson(),
            'verified': report.valid,
        }
        record.update(report.toDict(job.group))
        return record

    def rectifySet(self, job, elems):
        spec = job.group
        if spec.kind != PRIME_FIELD:
            raise ValueError(f'rectify works over F_p, not {spec}')
        residues = sorted({a[0] for a in elems} | {0})
        ell = job.ell or max(2, len(residues) - 2)
        cert = rectify.findDilation(residues, spec.modulus, ell,
                                    force=job.force)
        record = {
            'set': residues,
            'ell': ell,
            'lev_bound': rectify.levBound(spec.modulus, ell),
            'found': cert is not None,
            'certificate': cert.toDict() if cert else None,
            'freiman_verified': None,
        }
        if cert is not None:
            try:
                record['freiman_verified'] = rectify.freimanVerify(cert, ell)
            except GuardExceededError:
                logger.info('Certificate too large for the exhaustive check')
        return record

    def checkCertificate(self, job, cert):
        """Re-check an emitted certificate: structure, then the exhaustive
        Freiman check when it fits the budget."""
        record = {
            'certificate': cert.toDict(),
            'structure_ok': cert.checkStructure(),
            'freiman_verified': None,
        }
        try:
            record['freiman_verified'] = rectify.freimanVerify(
                cert, cert.ell, force=job.force)
        except GuardExceededError:
            logger.info('Certificate too large for the exhaustive check')
        return record

    def countSet(self, job, elems):
        spec = job.group
        return {
            'set': [groups.toJsonElement(spec, a) for a in sorted(elems)],
            'valid_orderings': search.countValidOrderings(
                elems, spec, force=job.force),
            'two_sided_orderings': search.countValidOrderings(
                elems, spec, two_sided=True, force=job.force),
        }

    def runSweep(self, job):
        spec = job.group
        if spec.kind not in (PRIME_FIELD, CYCLIC):
            raise ValueError(f'sweep works over F_p or Z_n, not {spec}')
        return search.sweep(spec.modulus,
                            max_size=job.max_size,
                            engine=job.engine or 'backtracking',
                            two_sided=job.two_sided,
                            cyclic=spec.kind == CYCLIC,
                            workers=job.workers,
                            force=job.force)

    # RENDERING
    def render(self, job, records, kind=None):
        kind = kind or job.command
        if job.output == 'json':
            return json.dumps({'command': job.command,
                               'group': str(job.group),
                               'seed': job.seed,
                               'results': records},
                              indent=2, sort_keys=True)
        if job.output == 'csv':
            return self._csv(self._csvRows(kind, records))
        return '\n'.join(self._humanLines(kind, records))

    def renderSweep(self, job, report):
        if job.output == 'json':
            return json.dumps({'command': 'sweep',
                               'report': report.toDict(job.timings)},
                              indent=2, sort_keys=True)
        if job.output == 'csv':
            return self._csv(report.toCsvRows(job.timings))
        lines = [f'Sweep of {report.group} \\ {{0}} with the {report.engine} '
                 f'engine{" (two-sided)" if report.two_sided else ""}: '
                 f'{report.subset_count} subsets']
        for size in sorted(report.per_size):
            stats = report.per_size[size]
            lines.append(f'  size {size:>2}: {stats.subset_count:>6} subsets, '
                         f'all sequenceable: {stats.all_sequenceable}, '
                         f'nodes total {stats.total_backtrack_nodes}, '
                         f'max {stats.max_backtrack_nodes}, '
                         f'{stats.elapsed:.3f} s')
        lines.append(f'Counterexamples: {len(report.counterexamples)}')
        for c in report.counterexamples:
            lines.append(f'  {list(c)}')
        return '\n'.join(lines)

    @staticmethod
    def _csv(rows):
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerows(rows)
        return buffer.getvalue().rstrip('\n')

    @staticmethod
    def _csvRows(command, records):
        def cell(value):
            return json.dumps(value, separators=(',', ':'))

        if command == 'order':
            rows = [['set', 'ordering', 'method', 'layout', 'verified']]
            rows += [[cell(r['set']), cell(r.get('ordering')),
                      r.get('method', ''), r.get('layout') or '',
                      r.get('verified', False)] for r in records]
        elif command == 'verify':
            rows = [['ordering', 'valid', 'two_sided', 'first_collision',
                     'zero_blocks']]
            rows += [[cell(r['ordering']), r['valid'], r['two_sided'],
                      cell(r['first_collision']), cell(r['zero_blocks'])]
                     for r in records]
        elif command == 'certificate':
            rows = [['p', 'ell', 'lambda', 'structure_ok', 'freiman_verified']]
            rows += [[r['certificate']['p'], r['certificate']['ell'],
                      r['certificate']['lambda'], r['structure_ok'],
                      r['freiman_verified']] for r in records]
        elif command == 'rectify':
            rows = [['set', 'ell', 'found', 'lambda', 'window_start', 'width',
                     'freiman_verified']]
            for r in records:
                cert = r['certificate'] or {}
                rows.append([cell(r['set']), r['ell'], r['found'],
                             cert.get('lambda', ''),
                             cert.get('window_start', ''),
                             cert.get('width', ''), r['freiman_verified']])
        else:
            rows = [['set', 'valid_orderings', 'two_sided_orderings']]
            rows += [[cell(r['set']), r['valid_orderings'],
                      r['two_sided_orderings']] for r in records]
        return rows

    @staticmethod
    def _humanLines(command, records):
        lines = []
        for r in records:
            if command == 'order':
                if r.get('ordering') is None:
                    lines.append(f'{r["set"]}: NO VALID ORDERING FOUND')
                    continue
                lines.append(f'ordering:     {r["ordering"]}')
                lines.append(f'partial sums: {r["partial_sums"]}')
                method = r['method']
                if r.get('layout'):
                    method += f' (layout {r["layout"]})'
                lines.append(f'method:       {method}')
                if r.get('certificate'):
                    c = r['certificate']
                    lines.append(f'certificate:  lambda={c["lambda"]}, '
                                 f'window_start={c["window_start"]}, '
                                 f'width={c["width"]}, '
                                 f'mapping={c["mapping"]}')
            elif command == 'verify':
                lines.append(f'ordering:        {r["ordering"]}')
                lines.append(f'partial sums:    {r["partial_sums"]}')
                lines.append(f'valid:           {r["valid"]}')
                if r['first_collision']:
                    lines.append(f'first collision: {r["first_collision"]}')
                lines.append(f'two-sided:       {r["two_sided"]}')
                lines.append(f'zero blocks:     {r["zero_blocks"]}')
            elif command == 'certificate':
                c = r['certificate']
                lines.append(f'certificate p={c["p"]}, ell={c["ell"]}, '
                             f'lambda={c["lambda"]}, domain '
                             f'{[s for s, _ in c["mapping"]]}')
                lines.append(f'  structure ok:     {r["structure_ok"]}')
                lines.append(f'  exhaustive check: {r["freiman_verified"]}')
            elif command == 'rectify':
                lines.append(f'set {r["set"]} at order {r["ell"]} '
                             f'(Lev bound {r["lev_bound"]})')
                if not r['found']:
                    lines.append('  no rectifying dilation')
                    continue
                c = r['certificate']
                lines.append(f'  lambda={c["lambda"]}, window_start='
                             f'{c["window_start"]}, width={c["width"]}')
                lines.append(f'  mapping {c["mapping"]}')
                lines.append(f'  exhaustive check: {r["freiman_verified"]}')
            else:
                lines.append(f'{r["set"]}: {r["valid_orderings"]} valid, '
                             f'{r["two_sided_orderings"]} two-sided')
            lines.append('')
        return lines[:-1] if lines else lines
