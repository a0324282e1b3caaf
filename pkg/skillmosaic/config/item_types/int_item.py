from dataclasses import dataclass
from typing import Optional

from skillmosaic.config.core import ConfigItem, typed_properties
from skillmosaic.config.item_types._range import RangeProperties


@dataclass()
class IntProperties(RangeProperties):

    def __post_init__(self):
        self._allowed_types = (int, )
        super().__post_init__()


@dataclass()
class IntItem(ConfigItem):
    """An int config item: counts, sizes and seeds."""

    def __init__(self,
                 value: int,
                 doc: Optional[str] = None,
                 properties: Optional[IntProperties] = None):
        super().__init__(
            value, doc, typed_properties(properties, IntProperties, 'IntItem'))
