"""Engine error types, tagged with the pipeline stage that raised them."""


class EngineError(Exception):
    """Base error; `stage` is one of parse/plan/execute and `position` is an
    optional character offset (parse errors only)."""

    stage = "execute"

    def __init__(self, message, position=None):
        super().__init__(message)
        self.message = message
        self.position = position

    def to_json(self):
        doc = {"stage": self.stage, "message": self.message}
        if self.position is not None:
            doc["position"] = self.position
        return doc


class ParseError(EngineError):
    stage = "parse"


class PlanError(EngineError):
    stage = "plan"


class ExecError(EngineError):
    stage = "execute"
