"""Flat presheaves and completions of finite categories enriched over R+ and Bool."""

__version__ = "0.1.0"
