import logging

from PySide6.QtCore import QSettings

from const import *
from utils import *

logger = logging.getLogger(APPLICATION)


def get_settings():
    """Returns the QSettings for this application"""
    settings = QSettings(
        QSettings.IniFormat, QSettings.UserScope, ORGANIZATION, SETTINGS_FILENAME
    )
    # re-open by file name so a freshly created file is read as plain INI
    return QSettings(settings.fileName(), QSettings.IniFormat)


def get_default_settings():
    return QSettings(resource_path("config/default.ini"), QSettings.IniFormat)


def get_setting(setting: str, settings=None):
    """Returns the value of the given setting"""
    if settings is None:
        settings = get_settings()
    if not settings.contains(setting):
        # try to load from default settings
        defaults = get_default_settings()
        if not defaults.contains(setting):
            raise KeyError(f"Setting {setting} does not exist")
        return defaults.value(setting)
    return settings.value(setting)


def get_int_setting(setting: str, settings=None):
    return int(get_setting(setting, settings))


def get_float_setting(setting: str, settings=None):
    return float(get_setting(setting, settings))


def install_default_settings():
    """Copies default.ini to the user settings path on first start"""
    settings_path = get_settings().fileName()
    if copy_if_missing(resource_path("config/default.ini"), settings_path):
        logger.info(f"Created settings file {settings_path}")
    return settings_path
