"""Validated configuration primitives.

A :class:`ConfigItem` holds one tunable plus the typed properties it is
checked against; a :class:`ConfigGroup` bundles items and sub-groups (the
oracle cut-offs, the planner budget, ...) and may add rules spanning several
items. Values are re-validated on every assignment, failures are collected
rather than raised until :meth:`ConfigGroup.raise_if_invalid` is called.
"""
from __future__ import annotations

from abc import ABC
from dataclasses import dataclass, field
from logging import getLogger
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml

from skillmosaic.exceptions import (ConfigGroupValidationError,
                                    ConfigItemValidationError)
from skillmosaic.utils.file_utils import load_yaml_config

_LOGGER = getLogger(__name__)


class ConfigItemValidation:
    """Failures collected while checking one value."""

    def __init__(self):
        self.fail_reasons: List[str] = []
        self.fail_exceptions: List[ValueError] = []

    def __repr__(self) -> str:
        return (f'{self.__class__.__name__}(passed={self.passed}, '
                f'fail_reasons={self.fail_reasons})')

    def add_validation(self, fail_reason: str, exception: ValueError):
        """Record a failure reason with the exception describing it."""
        if fail_reason not in self.fail_reasons:
            self.fail_reasons.append(fail_reason)
            self.fail_exceptions.append(exception)

    @property
    def passed(self) -> bool:
        return not self.fail_reasons


class ConfigGroupValidation(ConfigItemValidation):
    """Group level failures plus the validation of every child element."""

    def __init__(self):
        super().__init__()
        self.element_validation: Dict[str, ConfigItemValidation] = {}

    def add_element_validation(self, element_name: str,
                               validation: ConfigItemValidation):
        self.element_validation[element_name] = validation

    @property
    def group_passed(self) -> bool:
        return not self.fail_reasons

    @property
    def passed(self) -> bool:
        return self.group_passed and all(
            v.passed for v in self.element_validation.values())

    def all_fail_reasons(self) -> List[str]:
        """Flatten the failure tree into ``path: reason`` strings."""
        reasons = list(self.fail_reasons)
        for name, validation in self.element_validation.items():
            if isinstance(validation, ConfigGroupValidation):
                reasons.extend(f'{name}.{r}'
                               for r in validation.all_fail_reasons())
            else:
                reasons.extend(f'{name}: {r}'
                               for r in validation.fail_reasons)
        return reasons


@dataclass()
class ItemTypeProperties(ABC):
    """Constraints shared by every item type: nullability and type.

    Subclasses set ``_allowed_types`` in ``__post_init__`` before calling
    the parent, which checks the default against the constraints.
    """

    _allowed_types: Tuple[type, ...] = ()
    allow_null: Optional[bool] = None
    """Whether ``None`` is an acceptable value."""
    default: Optional[Any] = None

    def __post_init__(self):
        if self.default is not None:
            checked = self.validate(self.default)
            if not checked.passed:
                raise checked.fail_exceptions[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            k: v
            for k, v in self.__dict__.items()
            if v is not None and not k.startswith('_')
        }

    def validate(self, val) -> ConfigItemValidation:
        validation = ConfigItemValidation()
        try:
            if val is None and not self.allow_null:
                msg = 'Value is required but was left empty.'
                raise ConfigItemValidationError(msg)
            if val is not None and type(val) not in self._allowed_types:
                names = ' or '.join(t.__name__ for t in self._allowed_types)
                msg = f'Value {val!r} is a {type(val).__name__}, expected {names}.'
                raise ConfigItemValidationError(msg)
        except ConfigItemValidationError as e:
            validation.add_validation(msg, e)
        return validation


@dataclass
class ConfigItem:
    """One configurable value with its doc and properties."""

    value: Any
    doc: Optional[str] = None
    properties: Optional[ItemTypeProperties] = None
    validation: ConfigItemValidation = field(default=None, repr=False)

    def __post_init__(self):
        if self.value is None and self.properties.default is not None:
            self.value = self.properties.default
        self.validate()

    def __setattr__(self, name: str, value: Any) -> None:
        self.__dict__[name] = value
        if name == 'value':
            self.validate()

    def to_dict(self,
                values_only: Optional[bool] = False,
                include_none: Optional[bool] = True) -> Any:
        if not include_none and self.value is None:
            return None
        if values_only:
            return self.value
        d = {'value': self.value}
        if self.doc:
            d['doc'] = self.doc
        if self.properties:
            d['properties'] = self.properties.to_dict()
        return d

    def validate(self) -> ConfigItemValidation:
        self.validation = (self.properties.validate(self.value)
                           if self.properties else ConfigItemValidation())
        return self.validation

    def set_value(self, value: Any) -> None:
        """Set the value without validating it; the owning group validates
        once every value of a dict or file is in place."""
        self.__dict__['value'] = value


def typed_properties(properties: Optional[ItemTypeProperties], cls: type,
                     item_name: str) -> ItemTypeProperties:
    """Default ``cls`` properties for an item, or a TypeError when the
    given properties are of another type."""
    if properties is None:
        return cls()
    if not isinstance(properties, cls):
        raise TypeError(
            f'Properties of {item_name} should be of type {cls.__name__}.')
    return properties


class ConfigGroup(ABC):
    """A set of items and sub-groups validated together.

    Assigning a plain value to an item attribute sets the item's value, so
    ``group.alpha = 0.3`` stays validated.
    """

    def __init__(self, doc: Optional[str] = None):
        self.doc: Optional[str] = doc
        self.validation = self.validate()

    def __setattr__(self, name: str, value: Any) -> None:
        current = self.__dict__.get(name)
        if isinstance(current, ConfigItem) and not isinstance(value, ConfigItem):
            current.value = value
        else:
            self.__dict__[name] = value

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self.to_dict(values_only=True)})'

    def get_config_elements(
        self,
        types: Optional[Union[type, Tuple[type, ...]]] = None,
    ) -> Dict[str, Union[ConfigItem, ConfigGroup]]:
        """Public item and group attributes, optionally filtered by type."""
        types = types or (ConfigItem, ConfigGroup)
        return {
            k: v
            for k, v in self.__dict__.items()
            if isinstance(v, types) and not k.startswith('_')
        }

    def validate(self) -> ConfigGroupValidation:
        """Validate every element; subclasses add group rules on top."""
        self.validation = ConfigGroupValidation()
        for name, element in self.get_config_elements().items():
            self.validation.add_element_validation(name, element.validate())
        return self.validation

    def raise_if_invalid(self) -> None:
        """Raise on the first failing tree, logging every reason.

        :raise: :class:`~skillmosaic.exceptions.ConfigGroupValidationError`.
        """
        self.validate()
        if not self.validation.passed:
            msg = '; '.join(self.validation.all_fail_reasons())
            try:
                raise ConfigGroupValidationError(msg)
            except ConfigGroupValidationError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e

    def to_dict(
        self,
        values_only: Optional[bool] = False,
        include_none: Optional[bool] = True,
    ) -> dict:
        """The group as a nested dict; with ``values_only`` the format
        accepted by :meth:`set_from_dict` and the yaml files."""
        d = {} if values_only or self.doc is None else {'doc': self.doc}
        for name, element in self.get_config_elements().items():
            value = element.to_dict(values_only=values_only,
                                    include_none=include_none)
            if include_none or value is not None:
                d[name] = value
        return d

    def to_yaml(self, file_path: str):
        with open(file_path, 'w') as file:
            yaml.safe_dump(self.to_dict(values_only=True),
                           file,
                           sort_keys=False,
                           default_flow_style=False)

    def set_from_dict(self, config_dict: dict, root: bool = True):
        """Set values from a (partial) nested dict.

        Unknown keys are rejected so that typos in scenario files surface.
        Integers given for float items are converted.

        :raise: :class:`~skillmosaic.exceptions.ConfigGroupValidationError`
            for unknown keys.
        """
        for name, value in config_dict.items():
            element = self.get_config_elements().get(name)
            if isinstance(value, dict) and isinstance(element, ConfigGroup):
                element.set_from_dict(value, root=False)
                continue
            if not isinstance(value, dict) and isinstance(element, ConfigItem):
                allowed = element.properties._allowed_types
                if type(value) is int and float in allowed:
                    value = float(value)
                element.set_value(value)
                continue
            msg = (f"Unknown config element '{name}' for "
                   f'{self.__class__.__name__}.')
            try:
                raise ConfigGroupValidationError(msg)
            except ConfigGroupValidationError as e:
                _LOGGER.error(msg, exc_info=True)
                raise e
        if root:
            self.validate()

    def set_from_yaml(self, file_path: str):
        try:
            config_dict = load_yaml_config(file_path)
        except FileNotFoundError as e:
            _LOGGER.critical(f'Configuration file does not exist: {file_path}',
                             exc_info=True)
            raise e
        self.set_from_dict(config_dict)
