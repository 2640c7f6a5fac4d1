"""Exception types raised across the package.

Every error that callers are expected to catch has its own class; all of
them derive from PolycheckError so the CLI can report failures uniformly.
"""


class PolycheckError(Exception):
    """Base class for all errors raised by polycheck."""


# --- geometry ---------------------------------------------------------------

class DuplicateVertexError(PolycheckError):
    """A simplex lists the same vertex index more than once."""


class EmptySimplexError(PolycheckError):
    """A simplex with no vertices was given; the empty simplex is never stored."""


class ToleranceError(PolycheckError):
    """A numeric tolerance was zero or negative."""


class NotClosedError(PolycheckError):
    """A face of a listed simplex is missing from the complex."""


class UnknownCellError(PolycheckError):
    """A cell id is outside the cell table."""


# --- kripke / satisfaction sets ---------------------------------------------

class LengthMismatchError(PolycheckError):
    """A satisfaction set has a different length than the model's cell count."""


class ModelTooLargeError(PolycheckError):
    """The brute-force path oracle was asked to run on too large a model."""


class UnknownAtomError(PolycheckError):
    """A formula refers to an atomic proposition the model does not define."""


# --- specification language --------------------------------------------------

class SpecSyntaxError(PolycheckError):
    """Malformed specification text; carries the 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownCommandError(SpecSyntaxError):
    """A top-level word is not one of load/import/let/save."""


class RedefinedNameError(PolycheckError):
    """A let name or save label was declared twice."""


class UnknownIdentifierError(PolycheckError):
    """An expression uses a name that is neither bound nor built in."""


class ArityMismatchError(PolycheckError):
    """A function-style identifier was applied to the wrong number of arguments."""


class RecursionDetectedError(PolycheckError):
    """A let definition expands into itself, directly or through other lets."""


class ImportCycleError(PolycheckError):
    """Specification files import each other in a cycle."""


# --- model files -------------------------------------------------------------

class SchemaError(PolycheckError):
    """A model or results file does not match the documented JSON schema."""


class VertexIndexError(PolycheckError):
    """A simplex refers to a vertex index outside the coordinate list."""


class DuplicateSimplexError(PolycheckError):
    """Two entries of a model file describe the same simplex."""


class NonTriangularFaceError(PolycheckError):
    """An OBJ face record has a vertex count other than three."""


class MalformedLineError(PolycheckError):
    """An OBJ record could not be parsed; carries the 1-based line number."""

    def __init__(self, message, line):
        super().__init__(f"{message} (line {line})")
        self.line = line


class InvalidParamsError(PolycheckError):
    """Maze generator parameters are out of range."""


class UnknownLabelError(PolycheckError):
    """A results document does not contain the requested label."""
