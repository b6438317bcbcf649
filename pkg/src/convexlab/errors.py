"""Exception types shared by the library and the CLI."""


class InputError(ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


class FormatError(InputError):
    """A file failed to parse; carries the offending line number."""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = ""
        if line is not None:
            where = f"line {line}: "
        if field is not None:
            where += f"[{field}] "
        super().__init__(where + message)


class SizeGuardError(RuntimeError):
    """An enumeration would exceed its configured size guard (CLI exit code 3)."""


class TableRangeError(LookupError):
    """A plug-in table was asked for an entry it does not contain."""
