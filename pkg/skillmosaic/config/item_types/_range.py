from dataclasses import dataclass
from typing import Optional, Union

from skillmosaic.config.core import ConfigItemValidation, ItemTypeProperties
from skillmosaic.exceptions import ConfigItemValidationError

Number = Union[int, float]


@dataclass()
class RangeProperties(ItemTypeProperties):
    """Numeric properties bounded by an optional, optionally open,
    interval."""

    min_val: Optional[Number] = None
    inclusive_min: Optional[bool] = None
    """``>=`` rather than ``>`` at ``min_val``."""
    max_val: Optional[Number] = None
    inclusive_max: Optional[bool] = None
    """``<=`` rather than ``<`` at ``max_val``."""

    def _out_of_range(self, val: Number) -> Optional[str]:
        lo, hi = self.min_val, self.max_val
        if lo is not None and (val < lo or (val == lo
                                            and not self.inclusive_min)):
            bracket = '[' if self.inclusive_min else '('
            return f'Value {val} is below the range {bracket}{lo}, ...'
        if hi is not None and (val > hi or (val == hi
                                            and not self.inclusive_max)):
            bracket = ']' if self.inclusive_max else ')'
            return f'Value {val} is above the range ..., {hi}{bracket}'
        return None

    def validate(self, val: Number) -> ConfigItemValidation:
        validation = super().validate(val)
        if validation.passed and val is not None:
            msg = self._out_of_range(val)
            try:
                if msg is not None:
                    raise ConfigItemValidationError(msg)
            except ConfigItemValidationError as e:
                validation.add_validation(msg, e)
        return validation
