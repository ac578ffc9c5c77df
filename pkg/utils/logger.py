"""
Logging configuration using loguru for better console output.

Logs go to stderr: stdout carries the command line's JSON documents.
"""

import sys
from loguru import logger
from config.settings import Config


def setup_logger(level=None):
    """
    Configure logger with custom format and level.

    Args:
        level (str, optional): Log level name, defaults to Config.LOG_LEVEL

    Returns:
        logger: Configured logger instance
    """
    # Remove default handler
    logger.remove()

    logger.add(
        sys.stderr,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>",
        level=level or Config.LOG_LEVEL,
        colorize=sys.stderr.isatty()
    )

    return logger


# Create global logger instance
log = setup_logger()
