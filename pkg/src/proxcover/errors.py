"""Exception types used across the toolkit."""


class ProxcoverError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(ProxcoverError, ValueError):
    """A point does not match the ambient dimension of the oracle."""


class SceneError(ProxcoverError, ValueError):
    """A scene description is malformed or references an unknown set kind."""


class CoverError(ProxcoverError, RuntimeError):
    """A ball construction failed.

    The message starts with a machine-readable reason token, e.g.
    ``extended-condition-violated``, ``no-proximal-normal-found``,
    ``interior-probe-exhausted`` or ``verification-failed``.
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        msg = reason if not detail else f"{reason}: {detail}"
        super().__init__(msg)


class ExtendedConditionViolation(CoverError):
    """The normal needed by the construction is not realized at radius r."""

    def __init__(self, detail: str = ""):
        super().__init__("extended-condition-violated", detail)
