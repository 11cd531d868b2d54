"""Common error base. Concrete errors live next to the code that raises them."""


class CoachError(Exception):
    """Base for all domain errors; ``code`` is the stable wire identifier."""

    code = "error"

    @property
    def message(self) -> str:
        return str(self) or self.code
