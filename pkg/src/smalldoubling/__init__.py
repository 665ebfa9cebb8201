"""Small doubling in ordered groups: exact arithmetic, square sets,
structure classification and exhaustive verification."""
from .errors import (
    BallCapExceeded,
    CounterexampleFound,
    FamilyMismatchError,
    HypothesisError,
    PreconditionError,
    SmallDoublingError,
    UndecidedOrderError,
    UnsupportedVersion,
)
from .groups import (
    BaumslagSolitar12,
    DirectProduct,
    FreeGroup,
    GoldenSemidirect,
    Heisenberg,
    IntegerLattice,
    Ordering,
    commutator,
    compare,
    conjugate,
    group_from_json,
    identity,
    invert,
    multiply,
    power,
)
from .products import (
    FiniteSubset,
    SquareSet,
    doubling_report,
    elementwise_commutes,
    make_subset,
    partition_square,
    square,
    square_size,
)

__version__ = "0.1.0"
