"""ordercalc: exact ordering oracles for a catalog of orderable groups.

Left-orderings are represented as total sign functions (positive cones) on
concrete groups: Z^2, Tararin groups, the groups C_n, the Heisenberg group,
B(1, l) with its Smirnov orderings, free groups, and Thompson's group F.  All
arithmetic is exact (big rationals, quadratic numbers, l-adic rationals);
Conradian checks, crossing searches, dynamical realizations, the dense-orbit
gluing on F_2, and the bi-ordering classification of F are all verifiable at
desk scale through the pytest suite and the ``ordercalc`` CLI.
"""

from .core import (NEGATIVE, POSITIVE, ZERO, BallSpec, CheckReport,
                   ConradianWitness, CrossingWitness, Group, OrderingOracle,
                   agreement_radius, conjugate, conjugate_approx_search,
                   conradian_check, convex_extension, crossing_from_witness,
                   crossing_search, enumerate_ball, flip_on_convex, reverse,
                   sign_table, soul_bound_check, verify_crossing)
from .exact import (LAdic, Quad, Rational, SQRT2, ladic_normalize,
                    ladic_parity, quad_sign)

__version__ = "0.1.0"

__all__ = [
    "NEGATIVE", "POSITIVE", "ZERO", "BallSpec", "CheckReport",
    "ConradianWitness", "CrossingWitness", "Group", "OrderingOracle",
    "agreement_radius", "conjugate", "conjugate_approx_search",
    "conradian_check", "convex_extension", "crossing_from_witness",
    "crossing_search", "enumerate_ball", "flip_on_convex", "reverse",
    "sign_table", "soul_bound_check", "verify_crossing",
    "LAdic", "Quad", "Rational", "SQRT2", "ladic_normalize", "ladic_parity",
    "quad_sign",
]
