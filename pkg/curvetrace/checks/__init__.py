"""Acceptance checks run by the suite."""

from .base import Check, CheckResult, SuiteContext
from .independence import IndependenceCheck
from .intersection import IntersectionCheck
from .polytope import PolytopeCheck
from .relation import TraceRelationCheck
from .support import NonVanishingCheck, SupportCheck
from .torus import TorusCheck
from .twist import TwistPhaseCheck

__all__ = [
    'Check',
    'CheckResult',
    'SuiteContext',
    'PolytopeCheck',
    'TraceRelationCheck',
    'SupportCheck',
    'NonVanishingCheck',
    'TwistPhaseCheck',
    'IntersectionCheck',
    'IndependenceCheck',
    'TorusCheck',
]
