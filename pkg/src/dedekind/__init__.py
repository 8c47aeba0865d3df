"""Exact Dedekind sums ``S(p, q)`` and ``s(p, q)``.

Three independent evaluators (brute force, reciprocity walk, residue-class
closed forms) plus an exact identity checker.
"""

from .closed import closed_form_S, corollary1_S, small_modulus_S, small_numerator_S, theorem2_S
from .core import CoprimePair, EuclidSplit, coprime_pair, naive_S, naive_s, numerator_N, residue_split, sawtooth_B1
from .errors import DedekindError, InvalidInput, NotApplicable
from .fast import S_one, fast_S, fast_s, reciprocity_rhs
from .identities import CheckReport, CheckResult, IdentityId, check_identity, poly_coeffs, sweep

__version__ = "0.1.0"
