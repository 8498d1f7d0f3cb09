"""HTTP facade over the toolkit; the CLI is a thin client of this API."""

from .app import create_app

__all__ = ["create_app"]
