"""Broken circuit complexes, Stanley-Reisner and Orlik-Terao ideals, exactly."""

from .broken import Ordering, face_vectors, find_ci_ordering, minimal_broken_circuits, stanley_reisner_ideal
from .classification import classify_matroid
from .errors import BcxError, BudgetExhausted, CapExceeded, InvalidInput, InvariantViolation
from .matroid import Matroid, SimpleGraph, cycle_matroid, from_circuits, uniform, vector_matroid
from .orlik_terao import Arrangement, classify_arrangement, groebner_verify

__version__ = "0.1.0"
