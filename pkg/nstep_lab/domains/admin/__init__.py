"""Admin domain - setup and command catalog."""

__all__ = []
