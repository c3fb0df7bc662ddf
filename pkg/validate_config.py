#!/usr/bin/env python3
"""Script to validate a graph width config file."""

import json
import os
import sys
from typing import List, Tuple

from pydantic import ValidationError

from graphwidth.models import ConfigModel

# Caps that bound exponential enumerations; larger values are allowed but slow
CAP_WARNINGS = {
    "max_enum": 22,
    "max_count": 26,
    "max_dim": 10,
}


def validate_config(config_path: str) -> Tuple[bool, List[str]]:
    """Validate the configuration file.

    Args:
        config_path: Path to the configuration file

    Returns:
        Tuple of (is_valid, list_of_errors)
    """
    errors = []

    if not os.path.exists(config_path):
        errors.append(f"Config file '{config_path}' does not exist")
        return False, errors

    try:
        with open(config_path, 'r') as f:
            config = json.load(f)
    except json.JSONDecodeError as e:
        errors.append(f"Invalid JSON format: {str(e)}")
        return False, errors

    if not isinstance(config, dict):
        errors.append("Config must be a JSON object")
        return False, errors

    try:
        ConfigModel(**config)
    except ValidationError as e:
        for error in e.errors():
            field = ".".join(str(part) for part in error["loc"]) or "config"
            errors.append(f"'{field}': {error['msg']}")

    return len(errors) == 0, errors


def cap_warnings(config_path: str) -> List[str]:
    with open(config_path, 'r') as f:
        config = json.load(f)
    return [
        f"'{name}' = {config[name]} exceeds {limit}; enumeration may take very long"
        for name, limit in CAP_WARNINGS.items()
        if isinstance(config.get(name), int) and config[name] > limit
    ]


def main():
    """Main function."""
    config_path = os.environ.get('GRAPHWIDTH_CONFIG', 'config.json')

    print(f"Validating config file: {config_path}")
    valid, errors = validate_config(config_path)

    if valid:
        print("✅ Configuration is valid!")
        with open(config_path, "r") as f:
            settings = ConfigModel(**json.load(f))
        for name, value in settings.model_dump().items():
            print(f"  {name}: {value}")
        for warning in cap_warnings(config_path):
            print(f"  ⚠️  {warning}")
        sys.exit(0)
    else:
        print("❌ Configuration has the following errors:")
        for error in errors:
            print(f"  - {error}")
        sys.exit(1)


if __name__ == "__main__":
    main()
