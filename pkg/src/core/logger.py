import logging
import sys

from src.core.constants import LOG_COLOR, LOG_LEVEL

class LogColors:
    RESET = "\033[0m"
    RED = "\033[91m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    CYAN = "\033[96m"
    BOLD = "\033[1m"

LOGS_COLORS = {
    logging.DEBUG: LogColors.CYAN,
    logging.INFO: LogColors.GREEN,
    logging.WARNING: LogColors.YELLOW,
    logging.ERROR: LogColors.RED,
    logging.CRITICAL: LogColors.BOLD + LogColors.RED
}

class ColoredFormatter(logging.Formatter):
    """Formato `fecha - nombre - nivel - mensaje`, coloreado por nivel si `use_color`."""

    def __init__(self, *args, use_color: bool = True, **kwargs):
        super().__init__(*args, **kwargs)
        self.use_color = use_color

    def format(self, record):
        log_message = f"{self.formatTime(record, self.datefmt)} - {record.name} - {record.levelname} - {record.getMessage()}"
        if record.exc_info:
            log_message = f"{log_message}\n{self.formatException(record.exc_info)}"
        if not self.use_color:
            return log_message
        log_color = LOGS_COLORS.get(record.levelno, LogColors.RESET)
        return f"{log_color}{log_message}{LogColors.RESET}"

def _wants_color(stream) -> bool:
    if LOG_COLOR in ("always", "never"):
        return LOG_COLOR == "always"
    return hasattr(stream, "isatty") and stream.isatty()

def get_logger(name="FBRK"):
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, LOG_LEVEL, logging.INFO))

    if logger.hasHandlers():
        return logger

    # stderr: stdout queda libre para la salida de los comandos del CLI
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(ColoredFormatter(datefmt="%Y-%m-%d %H:%M:%S", use_color=_wants_color(sys.stderr)))
    logger.addHandler(console_handler)
    logger.propagate = False

    return logger

def set_level(level: str) -> None:
    """Cambia el nivel del logger del toolkit (p. ej. desde `--verbose`)."""
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))

logger = get_logger()
