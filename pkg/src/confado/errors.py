"""Exception hierarchy shared by every layer of the package."""


class ConformalError(Exception):
    """Base class for all errors raised by :mod:`confado`."""


class ParseError(ConformalError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class BadDivisorShape(ConformalError):
    """Divisor is not monic of degree one in the derivation variable."""


class NotLie(ConformalError):
    pass


class NotModule(ConformalError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotDerivation(ConformalError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotIdeal(ConformalError):
    pass


class NotSaturated(ConformalError):
    pass


class NotCocycle(ConformalError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class IncompatibleSpec(ConformalError):
    pass


class HypothesisViolation(ConformalError):
    pass


class InternalResidual(ConformalError):
    """A constructive step left a nonzero residual (input outside the proven scope)."""


class CertificateFailure(ConformalError):
    pass


class NonSplitSpectrum(ConformalError):
    """The computation needs eigenvalues that are not rational.

    ``polynomial`` holds the offending characteristic polynomial (as text).
    """

    def __init__(self, message, polynomial=None):
        self.polynomial = polynomial
        super().__init__(message if polynomial is None else f"{message}: {polynomial}")


class NoIrreducibleFound(ConformalError):
    """Search for an irreducible submodule ended inside the degree bound."""


class UnsupportedCurrentType(ConformalError):
    """Pure current-type case with nontrivial center; not constructed here."""
