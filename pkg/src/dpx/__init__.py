"""Exact products of two dihedral groups of twice-odd order.

Two independent roads to the same family: a parametrized constructor
for every admissible tuple of residues, and a brute-force sweep over
crossing-table seeds that rediscovers the family from nothing but the
group axioms.  The cross-check drives one against the other.
"""

from .core import (
    DEFAULT_ISO_BUDGET,
    ConcreteGroup,
    Subgroup,
    build_from_table,
    centralizer,
    closure,
    core,
    direct_product,
    element_order,
    is_normal,
    isomorphic,
    isomorphic_as_factorization,
    order_profile,
    read_cayley,
    read_cayley_text,
    recognize_dihedral,
    write_cayley,
    write_cayley_text,
)
from .dihedral import cyclic_group, dihedral_group, dihedral_permutation_group
from .errors import (
    BudgetExceeded,
    ConstructionInconsistent,
    InadmissibleTuple,
    InvalidInput,
    InvalidTuple,
    NotAGroup,
    SearchBudgetExceeded,
)
from .kernels import COMPILED
from .oracle import (
    DEFAULT_SEED_BUDGET,
    CrossingSeed,
    CrossingTable,
    CrossReport,
    OracleGroup,
    SweepResult,
    build_oracle_group,
    cross_validate,
    crossing_from_group,
    enumerate_exact_products,
    match_parameters,
    partition_as_factorizations,
    propagate,
)
from .products import (
    ExactProductGroup,
    ParameterTuple,
    additive_order,
    admissible_tuples,
    check_conditions,
    construct_group,
    gap_presentation,
    strata_counts,
    structural_checks,
    verify_cores,
    verify_exact_product,
)
from .report import (
    ClassificationReport,
    build_report,
    emit_report,
    parse_report,
    partition_by_isomorphism,
)

__version__ = "0.1.0"
