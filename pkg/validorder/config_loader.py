"""
File: validorder/config_loader.py

Reads `config.ini` from the repository root. Defaults are loaded first, so
a missing file or a missing key never leaves a section incomplete.
"""
import configparser
import logging
import pathlib

logger = logging.getLogger(__name__)

DEFAULTS = {
    'GENERAL': {
        'log_level': 'WARNING',
        'log_file': '',
        'log_max_bytes': '1024000',
        'log_backups': '3',
    },
    'GUARDS': {
        'backtrack_max_size': '20',
        'count_max_size': '10',
        'sweep_max_prime': '17',
        'rectify_max_prime': str(2**26),
        'freiman_verify_budget': str(10**8),
    },
    'WORKERS': {
        'batch_workers': '1',
        'sweep_workers': '1',
        'rectify_chunk': '4096',
    },
}


class LoadConfig:
    def __init__(self, config_path=None):
        if config_path is None:
            config_path = (pathlib.Path(__file__).absolute().parent.parent /
                           'config.ini')
        self.config_path = pathlib.Path(config_path)
        self.config = configparser.ConfigParser()
        self.config.read_dict(DEFAULTS)
        read = self.config.read(self.config_path)
        if not read:
            logger.debug(f'No config file at {self.config_path}, '
                         'using defaults')

    def General(self):
        # LOGGING SETTINGS
        return dict(self.config['GENERAL'])

    def Guards(self):
        # RESOURCE GUARDS
        return dict(self.config['GUARDS'])

    def Workers(self):
        # CONCURRENCY SETTINGS
        return dict(self.config['WORKERS'])
