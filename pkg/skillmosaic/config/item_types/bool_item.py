from dataclasses import dataclass
from typing import Optional

from skillmosaic.config.core import (ConfigItem, ItemTypeProperties,
                                     typed_properties)


@dataclass()
class BoolProperties(ItemTypeProperties):

    def __post_init__(self):
        self._allowed_types = (bool, )
        super().__post_init__()


@dataclass()
class BoolItem(ConfigItem):
    """A switch, such as push noise or oracle noise."""

    def __init__(self,
                 value: bool,
                 doc: Optional[str] = None,
                 properties: Optional[BoolProperties] = None):
        super().__init__(
            value, doc, typed_properties(properties, BoolProperties,
                                         'BoolItem'))
