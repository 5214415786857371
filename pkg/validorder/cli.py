"""Command-line parsing: argv to `JobSpec`.

Batch files hold one set per line; `#` starts a comment and blank lines are
skipped.
"""
import argparse
import json
import logging
import pathlib

from validorder import __version__, corpus, groups
from validorder.errors import ParseError
from validorder.groups import GroupSpec
from validorder.interface import COMMANDS, OUTPUTS, JobSpec
from validorder.rectify import RectCertificate
from validorder.search import ENGINES

# create logger
logger = logging.getLogger(__name__)


def buildParser():
    parser = argparse.ArgumentParser(
        prog='validorder',
        description='Construct, certify and verify orderings of finite '
        'subsets of abelian groups with pairwise distinct partial sums.')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    parser.add_argument('command', choices=COMMANDS)

    group = parser.add_mutually_exclusive_group()
    group.add_argument('--prime', type=int, metavar='P', help='work in F_P')
    group.add_argument('--cyclic', type=int, metavar='N', help='work in Z_N')
    group.add_argument('--group', metavar='SPEC',
                       help='group such as "Z", "Z^2" or "Z_6 x Z"')

    source = parser.add_mutually_exclusive_group()
    source.add_argument('--set', dest='set_text', metavar='STR',
                        help='inline set, e.g. "1,7,11" or "(0,1);(1,0)"')
    source.add_argument('--set-ordering', dest='set_text', metavar='STR',
                        help='inline ordering for verify (same syntax)')
    source.add_argument('--file', type=pathlib.Path, metavar='PATH',
                        help='batch file with one set per line')
    source.add_argument('--random', type=int, metavar='COUNT',
                        help='generate COUNT random sets (see --seed, --size)')
    source.add_argument('--certificate', type=pathlib.Path, metavar='PATH',
                        help='JSON certificate or report to re-check (verify)')

    parser.add_argument('--size', type=int, default=5,
                        help='size of generated sets (default 5)')
    parser.add_argument('--seed', type=int, default=None,
                        help='seed for generated sets')
    parser.add_argument('--ell', type=int, default=None,
                        help='Freiman order for rectify')
    parser.add_argument('--engine', choices=ENGINES, default=None)
    parser.add_argument('--output', choices=OUTPUTS, default='human')
    parser.add_argument('--max-size', type=int, default=None,
                        help='largest subset size for sweep')
    parser.add_argument('--two-sided', action='store_true',
                        help='sweep for two-sided orderings')
    parser.add_argument('--workers', type=int, default=None,
                        help='worker count for sweep and batch jobs')
    parser.add_argument('--timings', action='store_true',
                        help='include elapsed times in sweep reports')
    parser.add_argument('--force', action='store_true',
                        help='lift resource guards')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='more console logging (repeat for debug)')
    return parser


def groupFromArgs(args) -> GroupSpec:
    if args.prime is not None:
        return GroupSpec.primeField(args.prime)
    if args.cyclic is not None:
        return GroupSpec.cyclic(args.cyclic)
    if args.group is not None:
        return groups.parseGroup(args.group)
    return GroupSpec.integers()


def readSetsFile(path, spec):
    """Parse a batch file into a list of sets."""
    sets = []
    try:
        text = pathlib.Path(path).read_text()
    except OSError as e:
        logger.error(f'Could not read {path}: {e}')
        raise ParseError(f'Could not read {path}: {e}')
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        try:
            sets.append(groups.parseSet(spec, line))
        except ParseError as e:
            raise ParseError(f'{path}:{lineno}: {e}')
    return sets


def readCertificates(path):
    """Load rectification certificates from a JSON file.

    The file holds one certificate object, a list of them, or a validorder
    JSON report whose results carry certificates.
    """
    try:
        data = json.loads(pathlib.Path(path).read_text())
    except (OSError, ValueError) as e:
        logger.error(f'Could not read {path}: {e}')
        raise ParseError(f'Could not read {path}: {e}')
    if isinstance(data, dict) and 'results' in data:
        data = [r['certificate'] for r in data['results']
                if isinstance(r, dict) and r.get('certificate')]
    elif isinstance(data, dict):
        data = [data]
    if not isinstance(data, list) or not data:
        raise ParseError(f'{path}: no certificates found')
    return [RectCertificate.fromDict(c) for c in data]


def jobFromArgs(args) -> JobSpec:
    spec = groupFromArgs(args)
    if args.certificate is not None:
        if args.command != 'verify':
            raise ParseError('--certificate is only accepted by verify')
        return JobSpec(command=args.command,
                       group=spec,
                       output=args.output,
                       force=args.force,
                       workers=args.workers,
                       certificates=readCertificates(args.certificate))
    if args.set_text is not None:
        sets = [groups.parseSet(spec, args.set_text)]
    elif args.file is not None:
        sets = readSetsFile(args.file, spec)
    elif args.random is not None:
        sets = corpus.randomSets(spec, args.random, args.size, seed=args.seed)
    else:
        sets = []
    if args.command != 'sweep' and args.set_text is None and \
            args.file is None and args.random is None:
        raise ParseError(f'{args.command} needs one of --set, --file or '
                         '--random')
    return JobSpec(command=args.command,
                   group=spec,
                   sets=sets,
                   engine=args.engine,
                   output=args.output,
                   seed=args.seed,
                   ell=args.ell,
                   max_size=args.max_size,
                   force=args.force,
                   two_sided=args.two_sided,
                   workers=args.workers,
                   timings=args.timings)


def parseArgs(argv=None):
    """Return `(JobSpec, verbosity)` for `argv`."""
    args = buildParser().parse_args(argv)
    return jobFromArgs(args), args.verbose
