"""Configuration handling for the graph width tool."""

import json
import logging
import os
from typing import Optional

from dotenv import load_dotenv

from graphwidth.models import ConfigModel, RequestOptions

logger = logging.getLogger("graph-width")

CONFIG_ENV = "GRAPHWIDTH_CONFIG"


class Config:
    """Configuration loaded from a JSON file."""

    def __init__(self, config_path: str):
        """Initialize configuration from a file.

        Args:
            config_path: Path to the configuration file

        Raises:
            FileNotFoundError: If the file doesn't exist
            json.JSONDecodeError: If the file isn't valid JSON
            pydantic.ValidationError: If a value is out of range
        """
        self.path = config_path
        self.settings = ConfigModel()
        self.load_config(config_path)

    def load_config(self, config_path: str):
        """Load and validate configuration from a file.

        Args:
            config_path: Path to the configuration file
        """
        with open(config_path, "r") as f:
            config_data = json.load(f)
        self.settings = ConfigModel(**config_data)
        logger.info(
            f"Loaded config from {config_path}: geometry={self.settings.geometry}, "
            f"max_enum={self.settings.max_enum}, max_dim={self.settings.max_dim}"
        )


def config_path_from_env() -> Optional[str]:
    """Path named by GRAPHWIDTH_CONFIG, reading a ``.env`` file first if present."""
    load_dotenv()
    return os.environ.get(CONFIG_ENV) or None


def load_config(config_path: Optional[str] = None) -> ConfigModel:
    """Settings from ``config_path``, else from GRAPHWIDTH_CONFIG, else the defaults."""
    config_path = config_path or config_path_from_env()
    if not config_path:
        logger.debug(f"{CONFIG_ENV} not set, using default settings")
        return ConfigModel()
    return Config(config_path).settings


def apply_overrides(settings: ConfigModel, options: RequestOptions) -> ConfigModel:
    """Return ``settings`` with every option given on the request replacing its value."""
    overrides = {
        name: getattr(options, name)
        for name in ("geometry", "max_enum", "max_count", "max_dim", "seed")
        if getattr(options, name) is not None
    }
    if overrides:
        logger.debug(f"Request overrides: {overrides}")
    return settings.model_copy(update=overrides)
