"""Permutation groups, Sylow normalizer graphs and local formations."""

from .constructors import (alternating, cyclic, dihedral, direct_product, janko, mathieu,
                           parse_group_expr, psl2, psl2_frobenius_extension, realize, symmetric)
from .errors import (CapExceeded, GroupExprError, NotNormal, NotSubgroup, PermutationError,
                     QuotientCapExceeded, SGraphError, SpecError)
from .formations import (ClassSpec, Covering, LocalDefinition, class_membership,
                         fundamental_definition, is_partition, lattice_formation_membership,
                         lemma1_membership, lf_membership, local_definition_from_covering,
                         n_closure_test, validate_symmetric, with_solvable_intersection)
from .group import PermGroup, contains, elements, group_from_generators, limits, order
from .perm import Permutation
from .subgroups import (action_kernel_on_factor, center, centralizer, chief_series,
                        derived_series, normal_closure, normalizer, perfect_core, quotient, sylow)
from .sylow_graph import (SylowGraph, components, delta_graph, export_graph, gamma_graph,
                          hypothesis_check, is_connected, rosn1, sylow_data)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
