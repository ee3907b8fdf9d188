"""Proof-theoretic validity over finite atomic-rule systems."""
from .bridge import formula_to_rules, rule_to_formula
from .errors import PTVError
from .ipc import ipc_provable, kripke_counterexample
from .rules import Base, BotPolicy, Rule, derives, parse_rule
from .semantics import consequence, gptv_valid, ptv_valid, valid, valid_optimized
from .syntax import parse_formula, print_formula
from .systems import ExplicitSystem, GeneratedSystem, GeneratorSpec, build_system

__version__ = "0.1.0"

__all__ = [
    "Base",
    "BotPolicy",
    "ExplicitSystem",
    "GeneratedSystem",
    "GeneratorSpec",
    "PTVError",
    "Rule",
    "build_system",
    "consequence",
    "derives",
    "formula_to_rules",
    "gptv_valid",
    "ipc_provable",
    "kripke_counterexample",
    "parse_formula",
    "parse_rule",
    "print_formula",
    "ptv_valid",
    "rule_to_formula",
    "valid",
    "valid_optimized",
]
