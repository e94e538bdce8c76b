import time
import logging
from functools import wraps

logger = logging.getLogger(__name__)


def timer(func):
    """Decorator to measure the execution time of a function."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        logger.debug(f"Starting {func.__qualname__}...")
        result = func(*args, **kwargs)
        elapsed_time = time.perf_counter() - start_time
        logger.debug(f"{func.__qualname__} took {elapsed_time:.4f} seconds to execute.")
        return result
    return wrapper
