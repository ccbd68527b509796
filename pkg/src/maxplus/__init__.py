"""Idempotent (max-plus) linear algebra: semirings, interval extensions,
matrix closure, spectral theory, Bellman equations and dequantization."""

from .errors import *  # noqa: F401,F403
from .semiring import (
    NEG_INF,
    POS_INF,
    BoolSemiring,
    Flags,
    MaxMin,
    NumericMode,
    Product,
    RMax,
    RMaxComplete,
    RMin,
    Semiring,
    SemiringId,
    instances,
    semiring_from_string,
)
from .axioms import AxiomReport, check_axioms
from .interval import (
    Interval,
    IntervalSemiring,
    SetAlgebra,
    big_hull_sum,
    hull_add,
    hull_mul,
    interval,
    interval_hull,
    interval_nth_root,
    set_star,
)
from .kaucher import (
    FractionSemifield,
    GeneralizedInterval,
    KaucherSemifield,
    frac_add,
    frac_equiv,
    frac_inv,
    frac_mul,
    phi,
    phi_preimage,
)
from .matrix import (
    GraphSpec,
    Matrix,
    closure,
    from_graph,
    is_definite,
    is_semidefinite,
    join,
    mat_add,
    mat_leq,
    mat_mul,
    mat_pow,
    partial_sum,
    split,
    to_graph,
    upper,
)
from .spectral import (
    BlockForm,
    EigenPair,
    block_form,
    eigen_interval,
    eigenvalue,
    eigenvector,
    is_irreducible,
    karp_cycle_mean,
    rho,
)
from .bellman import Precheck, SolveReport, minimality_check, solve, verify
from .dequant import (
    DequantParams,
    GridFunction,
    convergence_table,
    dequantize,
    idempotent_integral,
    kernel_apply,
    legendre,
    measure,
    oplus_h,
    quantize,
    scalar_product,
)
from .io import parse_graph, parse_grid, parse_matrix

__version__ = "0.1.0"
