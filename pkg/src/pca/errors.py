"""Exception hierarchy shared by every stage of the pipeline."""


class PCAError(Exception):
    """Base class for all errors raised by this package."""


class PrologSyntaxError(PCAError):
    """A problem in Prolog source text, located by line and column."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"


class UnterminatedQuotedAtom(PrologSyntaxError):
    pass


class UnterminatedBlockComment(PrologSyntaxError):
    pass


class InvalidEscape(PrologSyntaxError):
    pass


class InvalidCharacter(PrologSyntaxError):
    pass


class OperatorClash(PrologSyntaxError):
    pass


class UnexpectedToken(PrologSyntaxError):
    pass


class UnbalancedDelimiter(PrologSyntaxError):
    pass


class BadOpDirective(UserWarning):
    """Emitted (as a warning) for an ``op/3`` directive that cannot be applied."""


class DictionaryError(PCAError):
    pass


class MissingEntry(DictionaryError, KeyError):
    pass


class IndexOutOfRange(DictionaryError, IndexError):
    pass


class FormatError(PCAError):
    """The container bytes do not describe a valid image."""


class BadMagic(FormatError):
    pass


class UnsupportedVersion(FormatError):
    pass


class HeaderMismatch(FormatError):
    pass


class TruncatedStream(FormatError):
    pass


class TrailingGarbage(FormatError):
    pass


class TruncatedPayload(FormatError):
    pass


class TruncatedDictionary(FormatError):
    pass


class NameDecodeError(FormatError):
    pass


class FixityOutOfRange(FormatError):
    pass


class BackendError(PCAError):
    pass


class UnknownBackend(BackendError, FormatError):
    pass


class CorruptBackendStream(BackendError, FormatError):
    pass
