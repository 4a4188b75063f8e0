import posixpath
from string import Template

from pathvalidate import ValidationError, sanitize_filename, validate_filename

from errors import InvalidArgument


class OutputTemplate(Template):
    """Template for output file names.

    Placeholders are written ~{key}; ~~{key} escapes them. Inside the braces
    ~{a|b|"literal"} picks the first alternative that resolves and ~{<key>}
    makes the value of key safe to use as a file name.
    """

    delimiter = "~"
    idpattern = None
    braceidpattern = r"[^{}]*"

    @staticmethod
    def _resolve(named, mapping):
        for arg in named.split("|"):
            if arg in mapping:
                return str(mapping[arg])
            if len(arg) >= 2 and arg[0] == '"' and arg[-1] == '"':
                return arg[1:-1]
            if len(arg) >= 2 and arg[0] == "<" and arg[-1] == ">":
                if arg[1:-1] in mapping:
                    return sanitize_filename(str(mapping[arg[1:-1]]), replacement_text="_")
        return None

    def safe_substitute(self, /, **kws):
        def convert(mo):
            named = mo.group("named") or mo.group("braced")
            if named is not None:
                value = self._resolve(named, kws)
                return mo.group() if value is None else value
            if mo.group("escaped") is not None:
                return self.delimiter
            if mo.group("invalid") is not None:
                return mo.group()
            raise ValueError("Unrecognized named group in pattern", self.pattern)

        return self.pattern.sub(convert, self.template)


def render_output_name(template, directory="", **values):
    """Renders an *OutputName setting into a path, raising ValueError for unusable names"""
    name = OutputTemplate(template).safe_substitute(**values)
    try:
        validate_filename(name)
    except ValidationError as err:
        raise InvalidArgument(f"Output name {name!r} rendered from {template!r} is invalid: {err}")
    return posixpath.join(directory, name) if directory else name
