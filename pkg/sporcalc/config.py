# -*- coding: utf-8 -*-

import os
import logging
from dataclasses import dataclass, replace
from typing import Optional

import yaml

from .exceptions import ConfigError


logger = logging.getLogger(__name__)

CONFIG_ENV = "SPORCALC_CONFIG"
DEFAULT_PATH = os.path.join("~", ".sporcalc.yaml")

# section -> {yaml key: Config field}
SCHEMA = {
    "normalize": {"cap": "normalize_cap"},
    "stagger": {"cap": "stagger_cap"},
    "potency": {"monomial_cap": "monomial_cap", "order_cap": "order_cap"},
}


@dataclass(frozen=True)
class Config(object):
    normalize_cap: Optional[int] = None
    stagger_cap: int = 3628800
    monomial_cap: int = 200000
    order_cap: int = 64

    def with_cap(self, cap):
        """Apply a ``--cap`` override to every search cap."""
        if cap is None:
            return self
        return replace(
            self,
            normalize_cap=cap,
            stagger_cap=cap,
            monomial_cap=cap,
            order_cap=cap,
        )


def _read(path):
    with open(path, "r") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"({path}) could not be parsed: {e}")
    return data or {}


def load_config(path=None):
    if path is None:
        path = os.environ.get(CONFIG_ENV)
    if path is None:
        candidate = os.path.expanduser(DEFAULT_PATH)
        if os.path.exists(candidate):
            path = candidate
    if path is None:
        return Config()

    if not os.path.exists(path):
        raise ConfigError(f"{path} does not exist")

    data = _read(path)
    if not isinstance(data, dict):
        raise ConfigError(f"({path}) top level must be a mapping")

    values = {}
    for section, body in data.items():
        if section not in SCHEMA:
            raise ConfigError(f"({path}) section {section} is not supported")
        for key, value in (body or {}).items():
            if key not in SCHEMA[section]:
                raise ConfigError(f"({path}) {section}.{key} is not supported")
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(
                    f"({path}) {section}.{key} must be a positive integer"
                )
            values[SCHEMA[section][key]] = value

    logger.debug("loaded config from %s: %s", path, values)
    return Config(**values)
