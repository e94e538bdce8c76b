import logging
from logging.handlers import RotatingFileHandler

from GenFlag.config import LOG_FILE, LOG_MAX_BYTES, LOG_BACKUP_COUNT, LOG_FORMAT


def configure_logging(log_level=logging.INFO, log_file=LOG_FILE):
    """
    Configures the root logger for the CLI.

    :param log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    :param log_file: Rotating log file path, or None to log to the console only
    """
    logger = logging.getLogger()
    logger.setLevel(log_level)

    # Check if handlers already exist to avoid duplicates
    has_console_handler = any(
        isinstance(h, logging.StreamHandler) and not isinstance(h, RotatingFileHandler)
        for h in logger.handlers
    )
    has_file_handler = any(isinstance(h, RotatingFileHandler) for h in logger.handlers)

    if not has_console_handler:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(log_level)
        console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(console_handler)

    if log_file and not has_file_handler:
        file_handler = RotatingFileHandler(log_file, maxBytes=LOG_MAX_BYTES, backupCount=LOG_BACKUP_COUNT)
        file_handler.setLevel(log_level)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(file_handler)

    logger.debug(f"Handlers configured: {[type(h).__name__ for h in logger.handlers]}")
    logger.debug(f"Logging level set to: {logging.getLevelName(log_level)}")
