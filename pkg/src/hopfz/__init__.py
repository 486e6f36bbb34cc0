"""Exact evaluation of 3-manifold invariants of closed normal o-graphs.

The invariant of a closed o-graph with respect to a finite-dimensional
involutory, unimodular and counimodular Hopf algebra H is the Fock character
of the product of canonical-element components of the Heisenberg double of H
read along the circuit.
"""

from .evaluator import EvalConfig, invariant, invariant_record
from .exact import Field, QQ
from .groups import GroupTable, builtin_groups, get_group
from .homcount import abelianization, count_homs
from .hopf import HopfAlgebra, builtin_algebras, dual, get_algebra, group_algebra
from .moves import apply, find_sites, fuzz
from .ograph import OGraph, connected_sum, lens, parse, pi1, serialize, validate

__all__ = [
    "EvalConfig", "Field", "GroupTable", "HopfAlgebra", "OGraph", "QQ", "abelianization",
    "apply", "builtin_algebras", "builtin_groups", "connected_sum", "count_homs", "dual",
    "find_sites", "fuzz", "get_algebra", "get_group", "group_algebra", "invariant",
    "invariant_record", "lens", "parse", "pi1", "serialize", "validate",
]
