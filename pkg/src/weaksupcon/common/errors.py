"""
Structured exceptions.

Every failure raised by the package derives from WeakSupConError and carries a
machine-readable code plus a details dict, so the CLI can turn it into a
one-line error response.
"""


class WeakSupConError(Exception):
    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        return {"code": self.code, "message": self.message, "details": self.details}


class ShapeError(WeakSupConError):
    code = "shape_mismatch"

    def __init__(self, op, shape_a, shape_b=None, message=None):
        shapes = [list(shape_a)] + ([list(shape_b)] if shape_b is not None else [])
        text = message or f"{op}: incompatible shapes {' and '.join(str(s) for s in shapes)}"
        super().__init__(text, op=op, shapes=shapes)


class ZeroNormError(WeakSupConError):
    code = "zero_norm"

    def __init__(self, op, row):
        super().__init__(f"{op}: row {row} has norm <= 1e-12", op=op, row=int(row))


class DomainError(WeakSupConError):
    code = "domain_error"


class BatchError(WeakSupConError):
    code = "invalid_batch"


class DataError(WeakSupConError):
    code = "invalid_data"


class ConfigError(WeakSupConError):
    code = "invalid_config"


class ArchitectureError(WeakSupConError):
    code = "architecture_mismatch"


class FormatError(WeakSupConError):
    code = "format_error"

    def __init__(self, message, offset, expected=None, actual=None):
        super().__init__(
            f"{message} (offset {offset})",
            offset=int(offset),
            expected=expected,
            actual=actual,
        )
