"""Exception taxonomy shared by all modules."""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for every error raised by this package."""


class ZeroSubstitution(AlgebraError):
    """gamma = 0 was substituted into a coefficient with a gamma pole."""


class SingularLimit(AlgebraError):
    """The gamma -> 0 limit does not exist (negative gamma power present)."""


class NonTerminatingSeries(AlgebraError):
    """An ad-series similarity transform did not terminate within max_depth."""

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class UnsupportedShape(AlgebraError):
    """An operator action would leave the closed wavefunction class."""


class BadArity(AlgebraError):
    """Vector lengths inconsistent with the requested half-integer rank."""


class NotInIdeal(AlgebraError):
    """A candidate operator is not a function multiple of the target operator."""

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class NonQuadratic(AlgebraError):
    """The Hamiltonian does not preserve the degree <= 2 filtration."""


class NotClosed(AlgebraError):
    """A set of generators does not close under commutation."""

    def __init__(self, message: str, pair=None, residual=None):
        super().__init__(message)
        self.pair = pair
        self.residual = residual


class DegenerateModes(AlgebraError):
    """The adjoint action has colliding eigenvalues; mode basis undefined."""


class CutoffTooSmall(AlgebraError):
    """A Fock-space operation would touch the truncation boundary."""


class CheckFailed(AlgebraError):
    """A symbolic identity check failed; carries the residual."""

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual
