"""Exact analysis of enumerated products"""
from src.oracle.mec import EndComponent, MECKind, amec_set, amec_states, mec_decomposition
from src.oracle.reachability import (
    almost_sure_reach,
    can_reach,
    complete_policy,
    max_reach_probability,
    optimal_reach_policy,
    policy_choices,
    policy_from_choices,
)
from src.oracle.chain import (
    InducedChain,
    RecurrentClassReport,
    classify_recurrent_classes,
    induced_chain,
    policy_satisfaction_probability,
)
from src.oracle.brute_force import BruteForceResult, brute_force_deterministic_policies
from src.oracle.discounted import optimal_discounted_values
from src.oracle.report import build_oracle_report

__all__ = [
    "EndComponent",
    "MECKind",
    "amec_set",
    "amec_states",
    "mec_decomposition",
    "almost_sure_reach",
    "can_reach",
    "complete_policy",
    "max_reach_probability",
    "optimal_reach_policy",
    "policy_choices",
    "policy_from_choices",
    "InducedChain",
    "RecurrentClassReport",
    "classify_recurrent_classes",
    "induced_chain",
    "policy_satisfaction_probability",
    "BruteForceResult",
    "brute_force_deterministic_policies",
    "optimal_discounted_values",
    "build_oracle_report",
]
