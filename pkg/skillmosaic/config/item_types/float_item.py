from dataclasses import dataclass
from typing import Optional

from skillmosaic.config.core import ConfigItem, typed_properties
from skillmosaic.config.item_types._range import RangeProperties


@dataclass()
class FloatProperties(RangeProperties):
    """Properties of a real-valued item; integers are accepted."""

    def __post_init__(self):
        self._allowed_types = (float, int)
        super().__post_init__()


@dataclass()
class FloatItem(ConfigItem):
    """A float config item, e.g. a probability or a distance in metres."""

    def __init__(self,
                 value: float,
                 doc: Optional[str] = None,
                 properties: Optional[FloatProperties] = None):
        super().__init__(
            value, doc, typed_properties(properties, FloatProperties,
                                         'FloatItem'))
