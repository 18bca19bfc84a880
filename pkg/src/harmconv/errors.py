"""Exception hierarchy for harmconv."""


class HarmconvError(Exception):
    """Base class for all errors raised by this package."""


class NonFiniteValue(HarmconvError, ValueError):
    pass


class DivisorVanishesAtOrigin(HarmconvError, ZeroDivisionError):
    pass


class OutsideDisk(HarmconvError, ValueError):
    pass


class NotUnimodular(HarmconvError, ValueError):
    pass


class NotInDisk(HarmconvError, ValueError):
    pass


class OutOfRange(HarmconvError, ValueError):
    pass


class InconsistentDilatationAtOrigin(HarmconvError, ValueError):
    pass


class BadWeights(HarmconvError, ValueError):
    pass


class ClassViolation(HarmconvError, ValueError):
    """A series pair does not satisfy the normalization of its class tag."""


class DegenerateStep(HarmconvError, ArithmeticError):
    """Cohn reduction hit |a0| == |an| to within the degeneracy tolerance."""

    def __init__(self, message, polynomial=None):
        super().__init__(message)
        self.polynomial = polynomial


class NoConvergence(HarmconvError, ArithmeticError):
    """Root finder ran out of iterations; best estimates are attached."""

    def __init__(self, message, roots=None, residuals=None):
        super().__init__(message)
        self.roots = roots
        self.residuals = residuals


class ConstantFunction(HarmconvError, ValueError):
    pass


class NotLocallyUnivalent(HarmconvError):
    """Jacobian check failed; the failing report is attached."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SchemaError(HarmconvError, ValueError):
    pass


class UnknownScenario(HarmconvError, KeyError):
    pass
