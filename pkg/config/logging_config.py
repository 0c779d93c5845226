"""
Logging setup shared by the command line entry points
"""
import logging

from pythonjsonlogger import jsonlogger

from config.settings import settings


def configure_logging(level: str = None, fmt: str = None) -> None:
    """
    Configure the root logger once.

    Args:
        level: Log level name (defaults to settings.log_level)
        fmt: "text" or "json" (defaults to settings.log_format)
    """
    level = (level or settings.log_level).upper()
    fmt = (fmt or settings.log_format).lower()

    if fmt == "json":
        handler = logging.StreamHandler()
        handler.setFormatter(
            jsonlogger.JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s")
        )
        root = logging.getLogger()
        root.handlers = [handler]
        root.setLevel(level)
    else:
        logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
