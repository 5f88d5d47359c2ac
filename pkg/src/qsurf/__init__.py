"""Closed quantum surfaces from boundary words.

Parse arc-identification words on the disk boundary, classify the
resulting surface (classically and by the quantum invariant (N, k)),
compute K-groups with explicit generators, and build finite truncations
of the canonical shift-operator generators.
"""

from .curves import (
    ArcSpec,
    EarringGeometry,
    SymbolCurve,
    WindingVector,
    arc_parametrization,
    circle_power_curve,
    circle_windings,
    earring,
    numeric_circle_windings,
    winding_around,
    zeta_curve,
)
from .errors import (
    IndexRangeError,
    InvalidInvariantError,
    MixedSyntaxError,
    NearZeroError,
    NonIntegralError,
    NotContractionError,
    NotPairedError,
    ParseError,
    QsurfError,
    ShapeError,
    UnsupportedWordError,
)
from .ktheory import (
    AbelianGroup,
    IndexMap,
    K0Presentation,
    K1Generator,
    KGroups,
    index_map,
    k0_generator_presentation,
    k1_generator_presentation,
    kgroups,
    kgroups_json,
)
from .operators import (
    BlockKind,
    BlockSpec,
    SpectrumReport,
    TruncatedOperator,
    bergman_tz,
    bilateral_shift_circulant,
    block_label,
    bott_projection,
    build_generator,
    fredholm_index,
    k1_generator_blocks,
    spectrum_report,
    unilateral_shift,
)
from .snf import SmithDecomposition, kernel_basis, smith_normal_form
from .words import (
    SPHERE_INVARIANT,
    BoundaryWord,
    OrientedLetter,
    PairStructure,
    SurfaceClass,
    SurfaceKind,
    VertexPartition,
    classify,
    is_isomorphic,
    pair_structure,
    parse_word,
    quantum_invariant,
    render,
    standard_word,
    vertex_classes,
)

__version__ = "0.1.0"
