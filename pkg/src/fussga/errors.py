class ParseError(ValueError):
    """Malformed instance text; ``line`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class InitializationError(RuntimeError):
    """The problem's genome generator or fitness failed while seeding a population."""
