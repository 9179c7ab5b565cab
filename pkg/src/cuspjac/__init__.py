"""Exact computation of cuspidal class groups of X_0(N) and of the rational
torsion of the generalized Jacobian J_0(N)_m, with a lattice oracle."""

from .arith import epsilon_of, factorize, k_of_N, num
from .cusp_lattice import DivisorVector, cusp_table, degree_check, tensor
from .etaq import EtaExponentVector, eta_of_divisor, is_modular, order_of_divisor
from .generators import HypothesisError, prime_ordering, z_vector
from .kernel import E_of_f, D_of_f, torsion_structure
from .oracle import cuspidal_group, verify

__all__ = [
    "DivisorVector",
    "D_of_f",
    "E_of_f",
    "EtaExponentVector",
    "HypothesisError",
    "cusp_table",
    "cuspidal_group",
    "degree_check",
    "epsilon_of",
    "eta_of_divisor",
    "factorize",
    "is_modular",
    "k_of_N",
    "num",
    "order_of_divisor",
    "prime_ordering",
    "tensor",
    "torsion_structure",
    "verify",
    "z_vector",
]
