"""HTTP service around the workbench: request models, handlers, FastAPI app."""

from .handlers import CommandResult, handle
from .app import app, create_app

__all__ = ["CommandResult", "handle", "app", "create_app"]
