"""Shared errors and validation reports"""
from src.common.errors import (
    AutomatonValidationError,
    ConfigurationError,
    DocumentSchemaError,
    ModelValidationError,
    PolicyGapError,
    StateBudgetExceededError,
    SynthesisError,
    UnavailableActionError,
    UnknownBuiltinError,
    UnknownPropositionError,
)
from src.common.letters import EMPTY_LETTER, Letter, all_letters, format_letter, letter_key, make_letter
from src.common.report import ValidationReport, Violation

__all__ = [
    "EMPTY_LETTER",
    "Letter",
    "all_letters",
    "format_letter",
    "letter_key",
    "make_letter",
    "AutomatonValidationError",
    "ConfigurationError",
    "DocumentSchemaError",
    "ModelValidationError",
    "PolicyGapError",
    "StateBudgetExceededError",
    "SynthesisError",
    "UnavailableActionError",
    "UnknownBuiltinError",
    "UnknownPropositionError",
    "ValidationReport",
    "Violation",
]
