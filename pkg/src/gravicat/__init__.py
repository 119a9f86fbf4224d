"""Exact lattice-level invariants of four-dimensional cobordism categories."""

from .classify import (
    EvenIndef,
    K0Class,
    OddIndef,
    classify_indefinite,
    diagonalizable_definite,
    k0_class,
    k0_product,
    smooth_closed_constraint,
)
from .cobordism import (
    BoundaryComponent,
    CobordismRecord,
    Kind,
    compose,
    disjoint_union,
    functor_class,
    quadric_check,
    reverse_morphism,
    validate_cobordism,
)
from .errors import GravicatError
from .lattice import (
    Lattice,
    analyze,
    builtin,
    characteristic_vector,
    direct_sum,
    negate,
    tensor_product,
)
from .ledger import (
    BettiProfile,
    LedgerEntry,
    SymElement,
    convolve_disjoint,
    expected_dimension,
    ledger_degree,
    normalize,
    simple_type_check,
    sym_dimension,
)
from .walls import (
    NegativeSubspace,
    Period,
    crossing_set,
    grass_dimension,
    short_vectors,
    validate_subspace,
    wall_membership,
)

__version__ = "0.1.0"

__all__ = [
    "BettiProfile",
    "BoundaryComponent",
    "CobordismRecord",
    "EvenIndef",
    "GravicatError",
    "K0Class",
    "Kind",
    "Lattice",
    "LedgerEntry",
    "NegativeSubspace",
    "OddIndef",
    "Period",
    "SymElement",
    "analyze",
    "builtin",
    "characteristic_vector",
    "classify_indefinite",
    "compose",
    "convolve_disjoint",
    "crossing_set",
    "diagonalizable_definite",
    "direct_sum",
    "disjoint_union",
    "expected_dimension",
    "functor_class",
    "grass_dimension",
    "k0_class",
    "k0_product",
    "ledger_degree",
    "negate",
    "normalize",
    "quadric_check",
    "reverse_morphism",
    "short_vectors",
    "simple_type_check",
    "smooth_closed_constraint",
    "sym_dimension",
    "tensor_product",
    "validate_cobordism",
    "validate_subspace",
    "wall_membership",
]
