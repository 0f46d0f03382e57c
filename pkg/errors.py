class ToolkitError(Exception):
    """Base class for every data or validation error raised by the toolkit"""


class TableParseError(ToolkitError):
    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f'line {line_no}: {message}')


class TableValidationError(ToolkitError):
    pass


class UnmappedCharacterError(ToolkitError):
    def __init__(self, codepoints):
        self.codepoints = list(codepoints)
        listed = ', '.join(f'U+{ord(c):04X}' for c in self.codepoints)
        super().__init__(f'unmapped characters: {listed}')


class ReversibilityError(ToolkitError):
    def __init__(self, message, witness=None):
        self.witness = witness
        if witness is not None:
            message = f'{message} (ambiguous string: {witness!r})'
        super().__init__(message)


class SentinelCollisionError(ToolkitError):
    pass


class EncodingFormatError(ToolkitError):
    pass


class AlignmentError(ToolkitError):
    def __init__(self, index, message):
        self.index = index
        super().__init__(f'sentence {index}: {message}')


class InsufficientDataError(ToolkitError):
    pass


class ConfigurationError(ToolkitError):
    pass


class CapacityError(ToolkitError):
    pass


class DimensionMismatchError(ToolkitError):
    pass


class LengthMismatchError(ToolkitError):
    pass


class InvalidLanguageCodeError(ToolkitError):
    pass
