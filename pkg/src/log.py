import logging
import sys
import traceback

from const import *


def addLoggingLevel(levelName, levelNum, methodName=None):
    """
    https://stackoverflow.com/a/35804945

    Adds a new logging level to the `logging` module and the currently
    configured logging class.

    `levelName` becomes an attribute of the `logging` module with the value
    `levelNum`. `methodName` becomes a convenience method for both `logging`
    itself and the class returned by `logging.getLoggerClass()`. If
    `methodName` is not specified, `levelName.lower()` is used.

    Registering the same level twice is a no-op, so test sessions and the
    command line entry point can both call it.

    Example
    -------
    >>> addLoggingLevel('SUCCESS', 60)
    >>> logging.getLogger(APPLICATION).success('decomposition written')
    """
    if not methodName:
        methodName = levelName.lower()

    if getattr(logging, levelName, None) == levelNum and hasattr(
        logging.getLoggerClass(), methodName
    ):
        return
    if hasattr(logging, levelName):
        raise AttributeError("{} already defined in logging module".format(levelName))
    if hasattr(logging, methodName):
        raise AttributeError("{} already defined in logging module".format(methodName))
    if hasattr(logging.getLoggerClass(), methodName):
        raise AttributeError("{} already defined in logger class".format(methodName))

    def logForLevel(self, message, *args, **kwargs):
        if self.isEnabledFor(levelNum):
            self._log(levelNum, message, args, **kwargs)

    def logToRoot(message, *args, **kwargs):
        logging.log(levelNum, message, *args, **kwargs)

    logging.addLevelName(levelNum, levelName)
    setattr(logging, levelName, levelNum)
    setattr(logging.getLoggerClass(), methodName, logForLevel)
    setattr(logging, methodName, logToRoot)


def convert_log_level(level: str):
    """Converts a logLevel setting value to a Python log level value"""
    return getattr(logging, str(level).upper())


class ConsoleFormatter(logging.Formatter):

    COLORS = {
        "WARNING": "\033[33m",
        "INFO": "",
        "DEBUG": "\033[34m",
        "CRITICAL": "\033[1;31m",
        "ERROR": "\033[31m",
        "SUCCESS": "\033[32m",
    }
    RESET = "\033[0m"

    def __init__(self, *args, color=False):
        logging.Formatter.__init__(self, *args)
        self.color = color

    def format(self, record):
        text = super().format(record).strip()
        color = self.COLORS.get(record.levelname, "") if self.color else ""
        if color:
            return f"{color}{text}{self.RESET}"
        return text


class ConsoleLogger(logging.StreamHandler):
    def __init__(self, stream=None):
        super().__init__(stream if stream is not None else sys.stderr)
        isatty = getattr(self.stream, "isatty", None)
        self.setFormatter(
            ConsoleFormatter(
                "[%(asctime)s] [%(levelname)s] %(message)s",
                "%H:%M:%S",
                color=bool(callable(isatty) and isatty()),
            )
        )


def exception_handler(type, value, trace):
    logger = logging.getLogger(APPLICATION)
    logger.error("".join(traceback.format_tb(trace)))
    logger.error(f"{type} {value}")
    sys.__excepthook__(type, value, trace)


def setup_logging(level="INFO", stream=None):
    """Attaches the console handler to the application logger"""
    addLoggingLevel("SUCCESS", 60, "success")
    logger = logging.getLogger(APPLICATION)
    for handler in list(logger.handlers):
        if isinstance(handler, ConsoleLogger):
            logger.removeHandler(handler)
    logger.addHandler(ConsoleLogger(stream))
    logger.propagate = False
    sys.excepthook = exception_handler
    update_level(level)
    return logger


def update_level(level):
    try:
        new_level = convert_log_level(level)
    except AttributeError:
        new_level = logging.ERROR
    if not isinstance(new_level, int):
        new_level = logging.ERROR
    logging.getLogger(APPLICATION).setLevel(new_level)
