"""HTTP boundary: token auth, request/response schemas, route handlers."""

from .app import create_app

__all__ = ["create_app"]
