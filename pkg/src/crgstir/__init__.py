"""Stirling numbers, partition lattices and q-analogues for the complex reflection groups G(m,p,n)."""

from .colored import (
    ColoredPartition,
    ColoredPermutation,
    OrderedPartition,
    SuperPartition,
    enumerate_ordered,
    enumerate_partitions,
    enumerate_super,
    inv,
    parse_ordered,
    parse_partition,
    parse_super,
)
from .lattice import build_lattice, mobius_product, stirling_from_lattice, whitney_numbers
from .qpoly import BivarPoly, IntPoly, q_bracket, q_mstep_factorial
from .report import VerificationReport
from .stirling import (
    ordered_q_stirling,
    q_stirling1,
    q_stirling2,
    stirling1,
    stirling2,
    super_q_stirling,
)

__version__ = "0.1.0"
