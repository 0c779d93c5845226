"""Embedded product MDP of a PL-MDP and an LDGBA"""
from src.product.state import HALT, REJECTING_SINK, ActionKind, ProductAction, ProductState
from src.product.environment import EPMDPEnvironment, StepResult
from src.product.explicit import ExplicitProduct, enumerate_environment, enumerate_product, validate_product

__all__ = [
    "HALT",
    "REJECTING_SINK",
    "ActionKind",
    "ProductAction",
    "ProductState",
    "EPMDPEnvironment",
    "StepResult",
    "ExplicitProduct",
    "enumerate_environment",
    "enumerate_product",
    "validate_product",
]
