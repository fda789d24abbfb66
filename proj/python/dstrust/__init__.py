"""Credibility-weighted Dempster-Shafer trust aggregation and attack simulation."""

from ._dstrust import (
    BudgetExhausted,
    DecisionTree,
    EmptyEvidence,
    TotalConflict,
    camouflage_verdict,
    combine,
    combine_all,
    decide,
    estimated_trust,
    ground_truth_trust,
    mae,
    mass_from_recommendation,
    replenishment,
    run_scenario,
    self_assess,
    train_tree,
    updated_credibility,
)

__all__ = [
    "BudgetExhausted",
    "DecisionTree",
    "EmptyEvidence",
    "TotalConflict",
    "camouflage_verdict",
    "combine",
    "combine_all",
    "decide",
    "estimated_trust",
    "ground_truth_trust",
    "mae",
    "mass_from_recommendation",
    "replenishment",
    "run_scenario",
    "self_assess",
    "train_tree",
    "updated_credibility",
]
