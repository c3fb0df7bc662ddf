#!/usr/bin/env python3
"""Entry point for the graph width tool."""

import logging
import sys

from dotenv import load_dotenv

from graphwidth.core.config import config_path_from_env
from graphwidth.io.cli import main
from validate_config import validate_config

# Set up logging; reports go to stdout, logs to stderr
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger("graph-width")


def check_config() -> bool:
    """Validate the config file named by GRAPHWIDTH_CONFIG, if any."""
    config_path = config_path_from_env()
    if not config_path:
        return True
    logger.debug(f"Validating configuration: {config_path}")
    valid, errors = validate_config(config_path)
    if not valid:
        logger.error("Configuration validation failed:")
        for error in errors:
            logger.error(f"  - {error}")
    return valid


if __name__ == "__main__":
    load_dotenv()
    if not check_config():
        sys.exit(2)
    sys.exit(main())
