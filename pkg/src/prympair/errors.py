"""Exception hierarchy.

Every failure raised by the library derives from :class:`PrymError`.  The
"hard failure" classes (``EulerMismatch``, ``NonUnimodular``, ...) signal a
bug or corrupted input rather than a mathematical outcome.
"""


class PrymError(Exception):
    pass


# covers
class ParityError(PrymError):
    pass


class NegativeGenus(PrymError):
    pass


class DivisibilityError(PrymError):
    pass


class SearchBudgetExceeded(PrymError):
    pass


class InconsistentDiagram(PrymError):
    pass


# homology
class EulerMismatch(PrymError):
    pass


class TorsionFound(PrymError):
    pass


class NonUnimodular(PrymError):
    pass


class NotACycleImage(PrymError):
    pass


class CompositionMismatch(PrymError):
    pass


# lattices
class DegenerateForm(PrymError):
    pass


class SymmetryMismatch(PrymError):
    pass


class NotComplementary(PrymError):
    pass


class IdentityViolated(PrymError):
    pass


class GcdViolated(PrymError):
    pass


class NotExponentSix(PrymError):
    pass


class WrongRegime(PrymError):
    pass


class OutOfRange(PrymError, ValueError):
    pass


# classification
class InconsistentParams(PrymError, ValueError):
    pass


class NotFound(PrymError):
    """No witness was produced.

    ``exhausted`` is True when the whole search space was explored, False
    when the node budget ran out first.
    """

    def __init__(self, message, exhausted=False, nodes=0):
        super().__init__(message)
        self.exhausted = exhausted
        self.nodes = nodes


# input
class ParseError(PrymError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
