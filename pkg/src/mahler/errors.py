"""Exception types shared across the package."""


class MahlerError(Exception):
    pass


class InputError(MahlerError, ValueError):
    """Malformed or inconsistent input (exit code 1 on the command line)."""


class ParseError(InputError):
    def __init__(self, msg, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None:
            msg = "%s at position %d" % (msg, pos)
            if text is not None:
                msg += "\n  %s\n  %s^" % (text, " " * pos)
        super().__init__(msg)


class UnsupportedExtension(MahlerError):
    """A field extension that the library cannot build or verify (exit code 2)."""


class ReducibleError(MahlerError, ValueError):
    pass


class RamificationInsufficient(MahlerError):
    pass


class DimensionOverflow(MahlerError):
    pass


class UnsupportedCharacteristic(MahlerError):
    pass
