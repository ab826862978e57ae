import sys

from loguru import logger

from pgsnet_app import settings

CONSOLE_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan> - {message}"


def configure_logging(level=None, log_file=None):
    """
    Replace loguru's default sink with the project sinks.

    A console sink is always added; a serialized (JSON lines) file sink is added when `log_file`
    or the PGSNET_LOG_FILE setting is set.
    """
    level = level or settings.LOG_LEVEL
    log_file = log_file or settings.LOG_FILE
    logger.remove()
    logger.add(sys.stderr, level=level, format=CONSOLE_FORMAT)
    if log_file:
        logger.add(log_file, level=level, serialize=True)
    return logger


def progress_disabled():
    """tqdm bars are only drawn on an interactive terminal."""
    return not sys.stderr.isatty()
