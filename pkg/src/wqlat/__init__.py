"""Exact computation in positive cones of weakly quasi-lattice ordered groups."""

from .order import (
    Ball,
    BallCapExceeded,
    DirectSum,
    ElementOutsideBall,
    IntGroup,
    JoinResult,
    LeqTable,
    Presentation,
    PresentationError,
    check_weak_ql,
    enumerate_ball,
    oracle_join,
    verify_join,
)
from .presets import get_presentation, morphism_for

__all__ = [
    "Ball",
    "BallCapExceeded",
    "DirectSum",
    "ElementOutsideBall",
    "IntGroup",
    "JoinResult",
    "LeqTable",
    "Presentation",
    "PresentationError",
    "check_weak_ql",
    "enumerate_ball",
    "oracle_join",
    "verify_join",
    "get_presentation",
    "morphism_for",
]
