"""Invariants of solvable group actions in standard solvable form, computed
by local slices, exact division and localization."""

from .action import ActionSpec, Character, check_axioms, validate
from .dsl import emit_json, format_spec, load_result, parse
from .errors import (IterationCapError, ParseError, SolvquotError, TrivialActionError,
                     ValidationError, VerificationError)
from .pipeline import QuotientPresentation, presentation, reconstruct, solvable_invariants
from .poly import QQ, Field, Poly, PolyRing
from .verify import numeric_spotcheck, verify_output

__version__ = "0.1.0"

__all__ = [
    "QQ", "ActionSpec", "Character", "Field", "IterationCapError", "ParseError", "Poly",
    "PolyRing", "QuotientPresentation", "SolvquotError", "TrivialActionError",
    "ValidationError", "VerificationError", "check_axioms", "emit_json", "format_spec",
    "load_result", "numeric_spotcheck", "parse", "presentation", "reconstruct",
    "solvable_invariants", "validate", "verify_output",
]
