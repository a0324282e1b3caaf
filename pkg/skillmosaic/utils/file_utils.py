import json
import os
from typing import Any, Dict, Union

import yaml


def make_dirs(path: Union[str, os.PathLike]) -> None:
    """Ensure that a directory exists. If it does not exist, create it.

    Args:
        path (str): The directory path to check and create if not exists.

    Returns:
        None
    """
    if not os.path.exists(path):
        os.makedirs(path)


def load_yaml_config(file_path: Union[str, os.PathLike]) -> Dict[str, Any]:
    """Load configuration from a YAML file.

    Args:
        file_path (str): Path to the YAML file.

    Returns:
        Dict[str, Any]: Configuration dictionary, empty for an empty file.
    """
    with open(file_path, 'r', encoding='utf-8') as file:
        config = yaml.safe_load(file)
    return config or {}


def write_json(file_path: Union[str, os.PathLike], data: Any) -> None:
    """Write ``data`` as indented JSON with sorted keys and a trailing
    newline, so equal data gives equal bytes.

    Args:
        file_path (str): Path of the file to (over)write.
        data (Any): JSON-serialisable data.
    """
    with open(file_path, 'w', encoding='utf-8', newline='\n') as file:
        json.dump(data, file, indent=2, sort_keys=True)
        file.write('\n')
