"""Configuration package"""
from config.settings import settings
from config.logging_config import configure_logging

__all__ = ["settings", "configure_logging"]
