import math
import os
import posixpath
import shutil
import sys


def resource_path(relative_path):
    try:
        # PyInstaller creates a temp folder and stores path in _MEIPASS
        base_path = sys._MEIPASS
    except Exception:
        base_path = os.path.dirname(os.path.abspath(__file__))
    return posixpath.join(base_path, relative_path)


def copy_if_missing(source, destination):
    """Copies source to destination unless destination exists, returns True if copied"""
    if os.path.exists(destination):
        return False
    os.makedirs(os.path.dirname(destination) or ".", exist_ok=True)
    shutil.copy(source, destination)
    return True


def ensure_parent_dir(path):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    return path


def format_number(value):
    """Shortest text that parses back to exactly the same float"""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def file_stem(path):
    return os.path.splitext(os.path.basename(path))[0]
