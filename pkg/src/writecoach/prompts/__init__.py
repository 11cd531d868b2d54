from .render import PromptBundle, UnknownSlot, render
from .templates import PromptTemplate, template_for
from .validation import ValidationResult, validate_input

__all__ = [
    "PromptBundle",
    "PromptTemplate",
    "UnknownSlot",
    "ValidationResult",
    "render",
    "template_for",
    "validate_input",
]
