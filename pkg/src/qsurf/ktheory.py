"""K-groups of closed quantum surfaces via the boundary index map.

The six-term sequence of the compact-by-wedge extension collapses to

    K0 = Z/im(ind) + Z[1],    K1 = ker(ind),

where ind: Z^N -> Z sends the j-th boundary circle class to its index,
2 for a same-orientation pair and 0 otherwise.  The sphere skips the
wedge picture entirely: its boundary quotient is a contractible arc, so
K0 = Z^2 and K1 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import snf
from .errors import UnsupportedWordError
from .operators import BlockSpec, block_label, k1_generator_blocks
from .words import (
    PairStructure,
    SurfaceClass,
    SurfaceKind,
    partition_from_pairs,
)

UNIVERSAL_RELATION = "[1] - [P_Bott] = [1 - SS*]"
TORSION_RELATION = "2([P_Bott] - [1]) = 0"


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free_rank must be nonnegative")
        prev = 1
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion factors must be >= 2")
            if d % prev != 0:
                raise ValueError("torsion factors must be in divisibility order")
            prev = d

    def __str__(self) -> str:
        parts = [f"Z_{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


TRIVIAL_GROUP = AbelianGroup(0)


@dataclass(frozen=True)
class IndexMap:
    """The homomorphism Z^N -> Z on boundary circle classes."""

    vector: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.vector)

    @property
    def rank(self) -> int:
        return 0 if all(v == 0 for v in self.vector) else 1

    def apply(self, coefficients: tuple[int, ...]) -> int:
        if len(coefficients) != self.N:
            raise ValueError("coefficient vector has the wrong length")
        return sum(w * c for w, c in zip(self.vector, coefficients))


@dataclass(frozen=True)
class K1Generator:
    """One generator of the odd K-group: a label, the block normal form of
    its lift, and its class in the circle basis of the wedge."""

    label: str
    blocks: tuple[BlockSpec, ...]
    symbol_class: tuple[int, ...]


@dataclass(frozen=True)
class K0Presentation:
    """Generators [1] and [P_Bott] with their relations.  The torsion
    relation appears exactly when some pair has equal orientations; the
    universal relation identifies [1] - [P_Bott] with the rank-one
    projection 1 - SS* inside the compacts."""

    generators: tuple[str, str] = ("[1]", "[P_Bott]")
    relations: tuple[str, ...] = (UNIVERSAL_RELATION,)
    bott_realization: str = "bott_projection(bergman_tz(d))"

    @property
    def has_torsion_relation(self) -> bool:
        return TORSION_RELATION in self.relations


@dataclass(frozen=True)
class KGroups:
    k0: AbelianGroup
    k1: AbelianGroup
    k0_generators: K0Presentation
    k1_generators: tuple[K1Generator, ...] = field(default=())


def index_map(ps: PairStructure) -> IndexMap:
    """Index vector of a single-vertex word in letter order: entry 2 for a
    same-orientation pair (it winds twice), 0 for an opposite pair."""
    part = partition_from_pairs(ps)
    if part.vertex_count != 1:
        raise UnsupportedWordError(
            f"{part.vertex_count} vertex classes: index map needs a wedge word"
        )
    return IndexMap(tuple(2 if same else 0 for same in ps.same_orientation))


def _require_supported(cls: SurfaceClass) -> None:
    if cls.kind is SurfaceKind.UNSUPPORTED:
        raise UnsupportedWordError(cls.reason or "unsupported word")


def normal_form_index_map(cls: SurfaceClass) -> IndexMap:
    """Index map after reordering circles so the k same-orientation pairs
    come first: (2, ..., 2, 0, ..., 0)."""
    _require_supported(cls)
    if cls.kind is SurfaceKind.SPHERE:
        return IndexMap(())
    k = cls.k or 0
    return IndexMap((2,) * k + (0,) * (cls.N - k))


def k0_generator_presentation(cls: SurfaceClass) -> K0Presentation:
    _require_supported(cls)
    relations = [UNIVERSAL_RELATION]
    if cls.kind is SurfaceKind.NON_ORIENTABLE:
        relations.append(TORSION_RELATION)
    return K0Presentation(relations=tuple(relations))


def k1_generator_presentation(cls: SurfaceClass) -> tuple[K1Generator, ...]:
    """Generator list for the odd K-group.

    Orientable genus g: 2g generators, one bilateral normal-form block
    each, class e_j.  Non-orientable (n, k): n - 1 generators; generator
    i has class e_{i+1} - e_1 when i < k (both circles wind, the indices
    cancel) and plain e_{i+1} when i >= k (that circle already has index
    zero).  The sphere has none.
    """
    _require_supported(cls)
    if cls.kind is SurfaceKind.SPHERE:
        return ()
    out = []
    if cls.kind is SurfaceKind.ORIENTABLE:
        for j in range(1, cls.N + 1):
            e = [0] * cls.N
            e[j - 1] = 1
            out.append(K1Generator(f"U_{j}", k1_generator_blocks(cls.N, 0, j), tuple(e)))
        return tuple(out)
    k = cls.k or 0
    for i in range(1, cls.N):
        e = [0] * cls.N
        e[i] = 1
        if i < k:
            e[0] = -1
        out.append(K1Generator(f"V_{i}", k1_generator_blocks(cls.N, k, i), tuple(e)))
    return tuple(out)


def kgroups(cls: SurfaceClass) -> KGroups:
    """Both K-groups with generator presentations.

    The even group is the cokernel of the index map plus the free summand
    spanned by [1]; the odd group is the kernel.  Kernel and cokernel are
    computed by integer Smith reduction of the 1 x N index matrix.
    """
    _require_supported(cls)
    presentation = k0_generator_presentation(cls)
    generators = k1_generator_presentation(cls)
    if cls.kind is SurfaceKind.SPHERE:
        return KGroups(AbelianGroup(2), TRIVIAL_GROUP, presentation, generators)
    ind = normal_form_index_map(cls)
    coker_free, coker_torsion = snf.cokernel_invariants([list(ind.vector)])
    kernel_rank = len(snf.kernel_basis([list(ind.vector)]))
    return KGroups(
        k0=AbelianGroup(coker_free + 1, coker_torsion),
        k1=AbelianGroup(kernel_rank),
        k0_generators=presentation,
        k1_generators=generators,
    )


def kgroups_json(kg: KGroups) -> dict:
    """JSON-ready dict in the documented schema."""
    return {
        "k0": {"free_rank": kg.k0.free_rank, "torsion": list(kg.k0.torsion)},
        "k1": {"free_rank": kg.k1.free_rank, "torsion": list(kg.k1.torsion)},
        "k0_relations": list(kg.k0_generators.relations),
        "k1_generators": [
            {
                "label": g.label,
                "blocks": [block_label(b) for b in g.blocks],
                "symbol_class": list(g.symbol_class),
            }
            for g in kg.k1_generators
        ],
    }
