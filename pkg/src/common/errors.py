"""
Error hierarchy for the synthesis toolkit
"""
from typing import Optional


class SynthesisError(Exception):
    """Base class for all toolkit errors"""


class ConfigurationError(SynthesisError):
    """Experiment or CLI configuration is unusable"""


class DocumentSchemaError(SynthesisError):
    """A JSON document does not conform to its schema"""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ModelValidationError(SynthesisError):
    """A PL-MDP violates its invariants"""

    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid PL-MDP:\n{report.describe()}")


class AutomatonValidationError(SynthesisError):
    """An automaton violates the limit-deterministic structure"""

    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid LDGBA:\n{report.describe()}")


class UnavailableActionError(SynthesisError):
    """An action was requested at a state where it is not available"""

    def __init__(self, state: str, action: str):
        self.state = state
        self.action = action
        super().__init__(f"action '{action}' is not available at state '{state}'")


class UnknownBuiltinError(SynthesisError):
    """A built-in model, automaton or preset name is not registered"""

    def __init__(self, kind: str, name: str, known):
        self.name = name
        super().__init__(f"unknown {kind} '{name}'; known: {', '.join(sorted(known))}")


class UnknownPropositionError(SynthesisError):
    """A letter mentions a proposition the automaton does not know"""


class StateBudgetExceededError(SynthesisError):
    """Explicit enumeration or brute force went over its budget"""

    def __init__(self, budget: int, frontier_size: Optional[int] = None, what: str = "states"):
        self.budget = budget
        self.frontier_size = frontier_size
        detail = f" with {frontier_size} states still on the frontier" if frontier_size is not None else ""
        super().__init__(f"budget of {budget} {what} exceeded{detail}")


class PolicyGapError(SynthesisError):
    """A policy has no action for a state it reaches"""

    def __init__(self, state):
        self.state = state
        super().__init__(f"policy is undefined at reachable state {state}")
