"""Exception types shared across the package."""


class BoundaryLabError(Exception):
    """Base class for all errors raised by boundarylab."""


class ConfigError(BoundaryLabError):
    """Malformed or inconsistent experiment configuration (CLI exit code 2)."""


class UnsupportedGenusError(BoundaryLabError):
    """Representation construction is only implemented for genus 2."""


class DegenerateLengthError(BoundaryLabError):
    """A Fenchel-Nielsen length is below 1e-8; the gluing formulas lose
    more than six digits there, so we refuse rather than return garbage."""


class NotHyperbolicError(BoundaryLabError):
    """|trace| < 2 - 1e-9: the element has no translation length."""


class EllipticElementError(BoundaryLabError):
    """A non-hyperbolic word turned up while enumerating a Fuchsian group;
    the input representation cannot be discrete and faithful."""


class NotConvergedError(BoundaryLabError):
    """An iterative count or estimate did not stabilise within its budget."""


class NotDivergentError(BoundaryLabError):
    """A sequence fed to the projective-limit estimator stays bounded."""


class EmptyInputError(BoundaryLabError):
    """An operation that needs at least one data point received none."""


class MissingDTCoordsError(BoundaryLabError):
    """Curve lacks Dehn-Thurston coordinates (or uses an unsupported strand
    pattern), so the combinatorial crossing formula does not apply."""
