"""Exception types shared by the services, the CLI and the HTTP layer."""


class StrembedError(Exception):
    """Base class for every error raised by this toolkit"""


class AlphabetMismatchError(StrembedError, ValueError):
    """Two strings (or a string and its symbols) disagree on the alphabet"""


class SizeBoundError(StrembedError, ValueError):
    """Input exceeds the size bound of an exponential-time routine"""


class InvalidAlignmentError(StrembedError, ValueError):
    """Alignment fails validation or an optimality requirement"""


class ParameterError(StrembedError, ValueError):
    """A numeric parameter is outside its admissible range"""


class GuardError(StrembedError):
    """A configured scale guard refuses the request"""


class CodeGenerationError(StrembedError):
    """Randomized code search ran out of its attempt budget"""


class FormulaError(StrembedError, ValueError):
    """Malformed, non-normalized or out-of-range formula"""


class RecoveryError(StrembedError):
    """Reduction output does not decode to an integral value"""


class FormatError(StrembedError, ValueError):
    """Malformed text input (strings, code files, alignments, formulas)"""
