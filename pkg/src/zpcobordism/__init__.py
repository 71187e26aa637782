"""Exact formal group law calculus for complex cobordism and simple Z/p-actions."""

from .arith import INFINITY, ParameterError, is_p_integral, p_valuation
from .bases import GeneratorBasis, alpha_basis, beta_basis, b_basis, expand_in_basis, lattice_index_valuation, s_numbers
from .conner_floyd import (
    SimpleActionData,
    WeightList,
    builtin_action,
    component,
    congruent_mod_p_omega,
    gamma_p,
    realize_class,
)
from .expr import evaluate_text, parse_expression
from .fgl import alpha_coeff, beta, cp_class, exponential, k_series, logarithm, milnor_hypersurface, universal_fgl
from .graded import GradedElement, Partition, partitions_of, render
from .obstruction import Classification, classify, strictly_simple_realizable
from .series import BiSeries, USeries

__version__ = "0.1.0"
