"""HTTP front-end: pydantic models, handlers and the FastAPI app."""

from .models import Report
from .app import app, create_app

__all__ = ["Report", "app", "create_app"]
