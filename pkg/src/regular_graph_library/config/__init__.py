"""Configuration module for the regular graph library."""

from regular_graph_library.config.settings import Settings, get_settings

__all__ = ["Settings", "get_settings"]
