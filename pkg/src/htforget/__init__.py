"""Forgetting atoms from answer-set programs under here-and-there semantics."""

__version__ = "0.1.0"

from .forgetting import (ForgettingInstance, closure_forget, forget,
                         forget_models, omega, r_family, synthesize)
from .semantics import (HTModelSet, answer_sets, ht_consequence, ht_models,
                        strongly_equivalent)
from .syntax import Program, Rule, Signature, parse_program, render_program

__all__ = [
    "ForgettingInstance", "HTModelSet", "Program", "Rule", "Signature",
    "answer_sets", "closure_forget", "forget", "forget_models",
    "ht_consequence", "ht_models", "omega", "parse_program", "r_family",
    "render_program", "strongly_equivalent", "synthesize", "__version__",
]
