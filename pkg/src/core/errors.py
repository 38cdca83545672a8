"""Jerarquía de excepciones del toolkit.

El CLI traduce DomainError (y los ValidationError de pydantic) a exit code 2
y NumericalFailure a exit code 1.
"""


class FBRKError(Exception):
    """Base de todos los errores propios."""


class DomainError(FBRKError, ValueError):
    """Entrada no finita o fuera del dominio de la operación."""


class NumericalFailure(FBRKError, RuntimeError):
    """Una ejecución que debía ser estable no lo fue."""


class IncompatibilityError(NumericalFailure):
    """El lado derecho del problema elíptico periódico no tiene media nula."""


class ConvergenceError(NumericalFailure):
    """El solver iterativo agotó el límite de iteraciones."""
