"""Integral homology of spaces of polynomials with bounded n-fold roots.

P_{k,n}^l is the space of monic complex polynomials of degree k with at most
l roots of multiplicity >= n.  The package predicts every higher p-torsion
summand of its homology from base-p digit runs of l, rechecks each exponent
with a binomial-valuation oracle, and assembles graded homology groups.
"""

from .arnold import a_over_b, table_orders
from .digits import BasePExpansion, RunDecomposition, decompose, expand, relevant_primes
from .errors import BracketError, ConsistencyError, DomainError, InvalidBaseError, PolytorsError
from .graded import FinAbGroup, GradedGroup, Status, render
from .kernels import BACKEND
from .oracle import (
    DifferentialProblem,
    VerificationReport,
    carry_valuation,
    min_valuation,
    oracle_exponent,
    verify,
    verify_sweep,
)
from .torsion import (
    TorsionSummand,
    WeightedClass,
    all_higher_torsion,
    higher_torsion,
    homology_of_P,
    homology_of_W,
    least_k_via_weight,
)

__version__ = "0.1.0"
