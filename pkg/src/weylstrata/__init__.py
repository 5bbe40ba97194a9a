"""Lusztig strata, sheets and Jordan classes for small reductive groups."""
from .errors import (AlgorithmError, ConfigurationError, EmbeddingError, IntegrityError,
                     InvalidInputError, ResourceError, WeylStrataError)
from .rootsys import CartanType, build_root_system
from .strata import GroupSpec, StrataComputation, compute, verify_theorem
from .weylgrp import character_table, weyl_group

__all__ = [
    "AlgorithmError", "CartanType", "ConfigurationError", "EmbeddingError", "GroupSpec",
    "IntegrityError", "InvalidInputError", "ResourceError", "StrataComputation",
    "WeylStrataError", "build_root_system", "character_table", "compute", "verify_theorem",
    "weyl_group",
]
