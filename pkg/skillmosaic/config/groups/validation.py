# -- Validation groups --

from typing import List

from skillmosaic.config.core import ConfigGroup, ConfigGroupValidation
from skillmosaic.config.item_types.float_item import FloatItem
from skillmosaic.exceptions import ConfigGroupValidationError


class NonDecreasingGroup(ConfigGroup):
    """Inherit from this group if chains of float items must be
    non-decreasing.

    Each entry of :attr:`_ordered_chains` lists item names in the order their
    values must follow.
    """

    _ordered_chains: List[List[str]] = []

    def validate(self) -> ConfigGroupValidation:
        """Extend the parent validation with the ordering rule."""
        super().validate()
        elements = self.get_config_elements(FloatItem)
        for chain in self._ordered_chains:
            values = [(name, elements[name].value) for name in chain
                      if name in elements]
            for (name_a, a), (name_b, b) in zip(values, values[1:]):
                try:
                    if None not in (a, b) and a > b:
                        msg = f'{name_a} ({a}) should not be greater than {name_b} ({b})'
                        raise ConfigGroupValidationError(msg)
                except ConfigGroupValidationError as e:
                    self.validation.add_validation(msg, e)
        return self.validation
