"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A structural parameter (field modulus, n, m, L, ...) is invalid."""


class InsufficientSharesError(ValueError):
    """Fewer shares supplied than the reconstruction threshold."""


class KeyDecodeError(ValueError):
    """Serialized cipher key bytes are malformed."""


class UnrecoverableError(RuntimeError):
    """No zone can produce a candidate block for the requested slot."""


class AmbiguousRecoveryError(RuntimeError):
    """Majority vote over candidate blocks ended in a tie."""


class UnrepairableError(RuntimeError):
    """No fully intact donor zone exists for the requested repair."""


class MiningExhaustedError(RuntimeError):
    """The nonce space was exhausted without satisfying the target."""
