"""Approximation algorithms for MAXSPACE ad scheduling with release dates and deadlines."""

from .core import (
    Ad,
    FeasibilityReport,
    Instance,
    Schedule,
    Variant,
    Violation,
    classify_ptas,
    classify_thirds,
    format_rational,
    parse_rational,
    slot_fullness,
    total_fullness,
    verify,
)
from .errors import (
    AdspaceError,
    BudgetExceeded,
    ClassViolation,
    InternalError,
    OverflowGuard,
    ParseError,
    UnknownAd,
    ValidationError,
)
from .exact import OracleLimits, brute_force, dp_large
from .fileformat import format_schedule, parse_instance, parse_schedule, serialize_instance
from .generate import generate
from .greedy import combined, extract_move_set, first_fit, schedule_medium, schedule_small
from .ptas import ptas, solve_small

__version__ = "0.1.0"
