from .app import ApiError, create_app
from .events import RunEventLog
from .state import AppState, ServiceSettings, jsonable

__all__ = [
    "ApiError",
    "AppState",
    "RunEventLog",
    "ServiceSettings",
    "create_app",
    "jsonable",
]
