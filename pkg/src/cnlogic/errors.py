"""Exception types raised by the library.

Every error carries a short ``code`` used by the CLI for its one-line,
machine-parsable failure messages.
"""


class CnLogicError(Exception):
    code = "error"


class ParseError(CnLogicError):
    code = "parse"

    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnsupportedLanguageError(CnLogicError):
    code = "language"


class UnknownAtomError(CnLogicError):
    code = "unknown-atom"


class UnknownWorldError(CnLogicError):
    code = "unknown-world"


class EmptyAnnouncementError(CnLogicError):
    code = "empty-extension"


class SizeCapError(CnLogicError):
    code = "size-cap"


class FactorizationError(CnLogicError):
    code = "factorization"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class LengthMismatchError(CnLogicError):
    code = "length-mismatch"


class InfeasibleSpecError(CnLogicError):
    code = "infeasible-spec"


class ModelFormatError(CnLogicError):
    code = "model-format"


class UnknownAgentError(CnLogicError):
    code = "unknown-agent"


class SemanticsMismatchError(CnLogicError):
    code = "semantics"
