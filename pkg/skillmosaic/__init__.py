"""SkillMosaic: planar rearrangement planning over skill trajectories.

Importing the package reads the version and configures logging from
``config/_package_data/logging_config.yaml``: records go to stderr and to a
rotating ``skillmosaic.log`` under :data:`LOG_DIR`.
"""

import logging.config
import os
from pathlib import Path
from typing import Final

from platformdirs import PlatformDirs

from skillmosaic.utils.file_utils import load_yaml_config

_SM_ROOT_DIR: Final[Path] = Path(__file__).parent.resolve()

__version__: Final[str] = (_SM_ROOT_DIR / 'VERSION').read_text().strip()

LOG_DIR: Final[Path] = PlatformDirs(appname='skillmosaic').user_log_path
"""Per-user log directory, resolved for the running OS."""

LOG_FILE_NAME: Final[str] = 'skillmosaic.log'
LOG_FILE_PATH: Final[str] = os.path.join(LOG_DIR, LOG_FILE_NAME)


def _configure_logging() -> None:
    config = load_yaml_config(_SM_ROOT_DIR / 'config' / '_package_data' /
                              'logging_config.yaml')
    config['handlers']['info_rotating_file_handler'][
        'filename'] = LOG_FILE_PATH
    try:
        os.makedirs(LOG_DIR, exist_ok=True)
        logging.config.dictConfig(config)
    except Exception:  # noqa
        # read-only home: console only
        del config['handlers']['info_rotating_file_handler']
        config['loggers']['']['handlers'] = ['info_console_handler']
        logging.config.dictConfig(config)


_configure_logging()
