"""Exact construction, counting and evaluation of SL-invariant polynomials on multi-qudit states."""

from .characters import char_rectangular, char_two_row, fixed_points, generalized_catalan, rect_dim
from .combinatorics import CycleType, Partition, class_size, cstd, partitions_of
from .dimension import ExpPolyDim, asymptotic_ratio, degree_gate, slip_dim, slip_dim_symbolic
from .qstate import LocalOperator, QuditState, apply_local, bilinear_form, random_sl
from .schur_weyl import eval_slip, invariant_basis_single, project_single, slip_basis
from .sl2_ladder import SparsePoly, degree6_five_qubit
from .slip_qubit import BipartiteCut, f_ell
from .slocc import Verdict, compare, signature

__version__ = "0.1.0"
