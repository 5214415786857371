import logging
import sys
from logging.handlers import RotatingFileHandler

from validorder.cli import parseArgs
from validorder.config_loader import LoadConfig
from validorder.errors import (GroupError, GuardExceededError,
                               InvariantError, MalformedOrderingError,
                               SequencerUnavailableError)
from validorder.interface import EXIT_INPUT_ERROR, Interface

# create logger
logger = logging.getLogger(__name__)

_installed_handlers = []

LOG_FORMAT = ("[%(asctime)s] %(name)s:%(funcName)s:%(lineno)-3d :: "
              "%(levelname)-8s - %(message)s")


def setupLogging(verbosity=0):
    """Attach console and (optionally) rotating file handlers to the root
    logger. Reports go to stdout, so console logging uses stderr.
    """
    CONFIG = LoadConfig().General()
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    while _installed_handlers:
        root_logger.removeHandler(_installed_handlers.pop())

    # create formatter
    stream_format = logging.Formatter(LOG_FORMAT)

    level = logging.getLevelName(CONFIG['log_level'].upper())
    if not isinstance(level, int):
        level = logging.WARNING
    level = max(logging.DEBUG, level - 10 * verbosity)

    # create console handler
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setLevel(level)
    stream_handler.setFormatter(stream_format)
    root_logger.addHandler(stream_handler)
    _installed_handlers.append(stream_handler)

    # create file handler and set level to debug
    if CONFIG['log_file']:
        file_handler = RotatingFileHandler(
            CONFIG['log_file'],
            maxBytes=int(CONFIG['log_max_bytes']),
            backupCount=int(CONFIG['log_backups']))
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(stream_format)
        root_logger.addHandler(file_handler)
        _installed_handlers.append(file_handler)


def runValidorder(argv=None):
    """Parse `argv`, run the job and print its report; return the exit code.
    """
    try:
        job, verbosity = parseArgs(argv)
    except (GroupError, ValueError) as e:
        print(f'validorder: error: {e}', file=sys.stderr)
        return EXIT_INPUT_ERROR
    setupLogging(verbosity)

    try:
        code, text = Interface(workers=job.workers).run(job)
    except InvariantError as e:
        logger.critical(f'Internal invariant failed: {e}')
        raise
    except (GroupError, MalformedOrderingError, SequencerUnavailableError,
            GuardExceededError, ValueError) as e:
        logger.error(str(e))
        print(f'validorder: error: {e}', file=sys.stderr)
        return EXIT_INPUT_ERROR
    print(text)
    return code


def main(argv=None):
    sys.exit(runValidorder(argv))


if __name__ == '__main__':
    main()
