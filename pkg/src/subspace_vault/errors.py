"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class VaultError(Exception):
    """Base class for all errors raised by :mod:`subspace_vault`."""

    code = "error"


class FieldMismatchError(VaultError, ValueError):
    code = "field-mismatch"


class ParameterError(VaultError, ValueError):
    """A precondition on sizes, degrees or ranks was violated."""

    code = "bad-parameter"


class DecodingFailure(VaultError):
    """No codeword lies within the unique decoding radius.

    ``distance`` holds the best distance seen when the decoder knows it.
    """

    code = "decode-failure"

    def __init__(self, message: str, distance: int | None = None):
        super().__init__(message)
        self.distance = distance


class EnumerationCapError(VaultError):
    code = "enumeration-cap"


class ChaffSamplingError(VaultError):
    code = "chaff-sampling"


class VaultFormatError(VaultError):
    """Base for vault file problems; ``location`` is a JSON-path-like string."""

    code = "format"

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.detail = message
        self.location = location


class MalformedVaultError(VaultFormatError):
    code = "malformed"


class UnsupportedVersionError(VaultFormatError):
    code = "unknown-version"


class VaultInvariantError(VaultFormatError):
    code = "invariant-violation"
