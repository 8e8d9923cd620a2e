"""Exception hierarchy shared by every module of the toolkit."""


class HbDirichletError(Exception):
    """Base class; the CLI maps any subclass to exit code 1."""

    kind = "error"

    def to_dict(self):
        return {"kind": self.kind, "message": str(self)}


class DomainError(HbDirichletError, ValueError):
    """A point or parameter lies outside the domain of an operation."""

    kind = "domain_error"


class ValidationError(HbDirichletError, ValueError):
    """A constructed object violates one of its invariants."""

    kind = "validation_error"


class NormError(HbDirichletError, ValueError):
    kind = "norm_error"


class ExtremenessError(HbDirichletError, ValueError):
    """log(1 - |b|^2) is not integrable at grid resolution."""

    kind = "extremeness_error"


class NegativityError(HbDirichletError, ValueError):
    kind = "negativity_error"


class PairingError(HbDirichletError, ValueError):
    """Roots of a Laurent polynomial could not be split into reflected pairs."""

    kind = "pairing_error"

    def __init__(self, message, roots=()):
        super().__init__(message)
        self.roots = list(roots)

    def to_dict(self):
        d = super().to_dict()
        d["roots"] = [[float(r.real), float(r.imag)] for r in self.roots]
        return d
