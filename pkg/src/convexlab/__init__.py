"""Abstract convexity parameters, cubical Z2 homology and the constructions built on them."""

from .errors import FormatError, InputError, SizeGuardError, TableRangeError
from .homology import (
    BettiVector,
    ChainComplex,
    CubicalSetSystem,
    NerveComplex,
    betti,
    build_complex,
    nerve,
    shatter_value,
)
from .gf2 import gf2_rank
from .setcore import (
    Coloring,
    GradedProfile,
    Partition2,
    SetSystem,
    Verdict,
    colorful_check,
    colorful_helly_number,
    find_radon_partition,
    graded,
    helly_number,
    hull,
    intersecting_tuple_fraction,
    is_radon_partition,
    max_depth_fraction,
    max_kwise_clique,
    quotient,
    radon_number,
)

__version__ = "0.1.0"
