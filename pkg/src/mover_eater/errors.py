class BoundsExceeded(RuntimeError):
    """An exhaustive search needed more work than its budget allows."""

    def __init__(self, message: str, checked: int = 0) -> None:
        super().__init__(message)
        self.checked = checked
