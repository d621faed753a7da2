"""Ansatz case table, randomized trials and file I/O."""
from .cases import AnsatzCase, Branch, builtin_cases, euclidean_probe, get_case
from .trials import CaseReport, TrialConfig, run_case, run_conjecture_direction, su3_counterexample

__all__ = [
    "AnsatzCase",
    "Branch",
    "builtin_cases",
    "euclidean_probe",
    "get_case",
    "CaseReport",
    "TrialConfig",
    "run_case",
    "run_conjecture_direction",
    "su3_counterexample",
]
