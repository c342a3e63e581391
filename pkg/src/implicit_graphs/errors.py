"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed graph input: bad endpoint, self-loop, duplicate edge, bad text."""


class CapExceeded(RuntimeError):
    """An exact computation refused to run because it would exceed a hard cap.

    ``cap`` names the violated limit; ``required`` is the smallest budget that
    would let the computation run, when it can be computed.
    """

    def __init__(self, cap: str, limit, required=None):
        self.cap = cap
        self.limit = limit
        self.required = required
        msg = f"{cap} exceeded: limit {limit}"
        if required is not None:
            msg += f", required {required}"
        super().__init__(msg)


class SchemeError(ValueError):
    """Input outside a labeling scheme's family, or codes that violate the scheme's width."""
