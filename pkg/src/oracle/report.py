"""
Oracle report document
"""
import logging
from typing import Any, Dict, List, Mapping, Optional

import numpy as np

from src.learning import Policy
from src.oracle.chain import classify_recurrent_classes, induced_chain, policy_satisfaction_probability
from src.oracle.mec import EndComponent, MECKind, mec_decomposition
from src.oracle.reachability import max_reach_probability
from src.product import ExplicitProduct

logger = logging.getLogger(__name__)


def _rounded(value: float) -> float:
    return round(float(value), 12)


def build_oracle_report(
    p: ExplicitProduct,
    policies: Optional[Mapping[str, Policy]] = None,
    mecs: Optional[List[EndComponent]] = None,
    probabilities: Optional[np.ndarray] = None,
) -> Dict[str, Any]:
    """
    MEC listing, per-state maximal satisfaction probabilities and per-policy verdicts

    Args:
        p: Enumerated product
        policies: Named policies to evaluate from x0
        mecs: Precomputed MEC decomposition
        probabilities: Precomputed Pr_max of reaching the AMECs

    Returns:
        JSON-ready document; floats are rounded to 12 decimals
    """
    mecs = mec_decomposition(p) if mecs is None else mecs
    if probabilities is None:
        target = frozenset().union(*(m.states for m in mecs if m.kind is MECKind.AMEC))
        probabilities = max_reach_probability(p, target)

    report: Dict[str, Any] = {
        "model": p.model_name,
        "automaton": p.automaton_name,
        "mode": p.mode.value,
        "num_states": p.num_states,
        "num_rows": p.num_rows,
        "mecs": [
            {
                "kind": m.kind.value,
                "accepting": sorted(m.accepting),
                "states": [p.states[i].encode() for i in sorted(m.states)],
            }
            for m in mecs
        ],
        "amec_count": sum(1 for m in mecs if m.kind is MECKind.AMEC),
        "initial_max_probability": _rounded(probabilities[p.initial]),
        "max_probability": {x.encode(): _rounded(v) for x, v in zip(p.states, probabilities)},
        "policies": {},
    }
    for name, policy in sorted((policies or {}).items()):
        chain = induced_chain(p, policy)
        classes = classify_recurrent_classes(p, policy, chain=chain)
        report["policies"][name] = {
            "satisfaction_probability": _rounded(policy_satisfaction_probability(p, policy, chain=chain)),
            "recurrent_classes": [
                {
                    "verdict": c.verdict,
                    "accepting": sorted(c.accepting),
                    "states": [p.states[i].encode() for i in sorted(c.states)],
                }
                for c in classes
            ],
        }
    logger.info(
        f"Oracle report: {len(mecs)} MEC(s), {report['amec_count']} AMEC(s), "
        f"Pr_max at x0 = {report['initial_max_probability']:.6f}"
    )
    return report
