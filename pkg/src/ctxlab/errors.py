"""Shared exception types."""


class CtxlabError(Exception):
    """Base class for all library errors."""


class InvalidDistributionError(CtxlabError):
    """An edge-value assignment fails a triangle nonnegativity constraint."""


class ScenarioMismatchError(CtxlabError):
    """Two operands live on different measurement spaces."""


class NotAConeError(CtxlabError):
    """Operation requires a cone scenario."""


class UnsupportedShapeError(CtxlabError):
    """Base graph is not of the shape the fast path supports."""


class DisconnectedGraphError(CtxlabError):
    """Graph is disconnected; carries the component decomposition."""

    def __init__(self, components):
        self.components = tuple(tuple(c) for c in components)
        super().__init__(
            f"graph is disconnected ({len(self.components)} components: "
            + "; ".join(",".join(c) for c in self.components)
            + ")"
        )


class CollapseError(CtxlabError):
    """Requested edge set is not collapsible (loop or spans a circle)."""


class GuardrailExceededError(CtxlabError):
    """An enumeration would exceed its configured guardrail."""

    def __init__(self, message, required, limit):
        self.required = required
        self.limit = limit
        super().__init__(f"{message} (needs {required}, guardrail {limit})")
