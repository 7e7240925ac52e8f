"""Unimodular tuples with uniformly small power sums.

Finite-field constructions (Bose-Chowla Sidon sets), dual-engine
max-|S(nu)| sweeps, certified composition pipelines, and the classical
reference bounds to measure everything against.
"""

__version__ = "0.1.0"

from .assemble import (CompositionPlan, PipelineReport, TrimResult,
                       binary_compose, next_prime_gap, prime_gap_construct,
                       trim_subset)
from .bounds import (BaselineStats, BoundReport, erdos_renyi_bound,
                     katz_bound, montgomery_reference,
                     random_unimodular_baseline, roots_of_unity_tuple,
                     turan_constant, turan_lower)
from .errors import BudgetError, ReducibleModulusError
from .gf import (FieldContext, FieldParams, build_field, discrete_log,
                 fe_arith, is_prime, subfield_elements)
from .sidon import (BhCheck, SidonSet, bh_collision, bose_chowla,
                    character_sum_direct, field_context, unimodular_tuple,
                    verify_bh)
from .sweeps import (AngleTuple, SweepResult, eval_power_sum,
                     parseval_residual, spectrum, sweep_dft, sweep_generic,
                     sweep_naive)

__all__ = [
    "AngleTuple", "BaselineStats", "BhCheck", "BoundReport", "BudgetError",
    "CompositionPlan", "FieldContext", "FieldParams", "PipelineReport",
    "ReducibleModulusError", "SidonSet", "SweepResult",
    "bh_collision", "binary_compose", "bose_chowla", "build_field",
    "character_sum_direct", "discrete_log", "erdos_renyi_bound",
    "eval_power_sum", "fe_arith", "field_context", "is_prime", "katz_bound",
    "montgomery_reference", "next_prime_gap", "parseval_residual",
    "prime_gap_construct", "random_unimodular_baseline",
    "roots_of_unity_tuple", "spectrum", "subfield_elements", "sweep_dft",
    "sweep_generic", "sweep_naive", "trim_subset", "turan_constant",
    "turan_lower", "unimodular_tuple", "verify_bh",
]
