import os
from dotenv import load_dotenv

from .utils.logger import configure_logging

load_dotenv()


def _flag(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Settings:
    # Logging configuration
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE: str = os.getenv("LOG_FILE", "")

    # Game solving
    GAME_BACKEND: str = os.getenv("GAME_BACKEND", "auto")
    STATE_BUDGET: int = int(os.getenv("STATE_BUDGET", "4294967296"))
    EXPLICIT_WORK_LIMIT: int = int(os.getenv("EXPLICIT_WORK_LIMIT", "65536"))
    REACHABILITY_PREPASS: bool = _flag("REACHABILITY_PREPASS", "false")

    # Reference semantics
    ORACLE_UNROLL_SLACK: int = int(os.getenv("ORACLE_UNROLL_SLACK", "2"))

    # API settings
    API_TITLE: str = os.getenv("API_TITLE", "EBR Synthesis API")
    API_VERSION: str = os.getenv("API_VERSION", "1.0.0")
    CORS_ORIGINS: list = [
        origin.strip()
        for origin in os.getenv("CORS_ORIGINS", "http://localhost:3001,http://127.0.0.1:3001").split(",")
        if origin.strip()
    ]

settings = Settings()

logger = configure_logging(settings.LOG_LEVEL, settings.LOG_FILE)
