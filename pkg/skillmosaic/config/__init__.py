from pathlib import Path
from typing import Final

_LIB_CONFIG_ROOT_PATH: Final[Path] = Path(__file__).parent.resolve()
"""Directory of the config package; packaged yaml files live in its
``_package_data`` folder."""
