from .logging_config import configure_logging
from .timer import timer
from .report_saver import ReportSaver

__all__ = [
    'configure_logging',
    'timer',
    'ReportSaver'
]
