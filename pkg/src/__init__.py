"""
ascentlab - Fitness landscapes of Boolean VCSP constructions
"""

from .constructions import CdParams, build_cd_chain, build_cd_gadget, build_ms_scopes
from .search import PivotRule, run_ascent
from .vcsp import Assignment, VcspInstance, evaluate, flip_delta

__all__ = [
    "Assignment",
    "VcspInstance",
    "evaluate",
    "flip_delta",
    "CdParams",
    "build_cd_chain",
    "build_cd_gadget",
    "build_ms_scopes",
    "PivotRule",
    "run_ascent",
]
