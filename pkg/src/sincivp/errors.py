"""Exception types raised by :mod:`sincivp`."""

import numpy as np


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class SingularMatrixError(np.linalg.LinAlgError):
    """LU factorisation met a pivot too small to divide by."""


class InsufficientDataError(ValueError):
    """Too few usable records to fit a convergence rate."""


class UnknownNameError(KeyError):
    """Lookup of a problem, case or method name that is not registered."""

    def __str__(self):
        # KeyError quotes its argument; we want the plain message.
        return str(self.args[0]) if self.args else ""
