"""Finite truncations of the shift-operator generators.

The canonical generator of the surface with invariant (N, k) is a direct
sum of N blocks: block j carries ((j+1)/j) B - 1/j with B = S^2 (squared
unilateral shift) for j <= k and B = U (bilateral shift) for j > k, so
the essential spectrum of block j is the earring circle j.  Bilateral
blocks are truncated as circulants to keep them unitary; unilateral
truncations are nilpotent-plus-scalar, so their matrix eigenvalues are
truncation artifacts and all spectral claims for them go through the
symbol curve.  Fredholm indices are likewise computed from symbol
windings: on a square truncation kernel and cokernel counts cancel by
rank-nullity, which is why no dimension counting appears here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import sqrt

import numpy as np

from .curves import EarringGeometry, SymbolCurve, circle_power_curve, constant_curve, winding_around
from .errors import (
    IndexRangeError,
    InvalidInvariantError,
    NotContractionError,
    ShapeError,
)

CONTRACTION_SLACK = 1e-12


class BlockKind(Enum):
    UNILATERAL_POWER = "unilateral-shift-power"
    BILATERAL = "bilateral-shift"
    BERGMAN = "bergman-tz"
    IDENTITY = "identity"


@dataclass(frozen=True)
class BlockSpec:
    """One direct summand, semantically scale * B + offset * I.

    ``power`` and ``adjoint`` apply to unilateral blocks only: the base
    operator is S^power, or S*^power when adjoint is set.  Coefficients
    are exact rationals so normal-form labels render without rounding.
    """

    kind: BlockKind
    scale: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)
    power: int = 1
    adjoint: bool = False

    def __post_init__(self):
        if self.power < 1:
            raise ValueError(f"power must be >= 1, got {self.power}")
        if self.adjoint and self.kind is not BlockKind.UNILATERAL_POWER:
            raise ValueError("adjoint only applies to unilateral shift powers")


IDENTITY_BLOCK = BlockSpec(BlockKind.IDENTITY)


@dataclass(frozen=True)
class TruncatedBlock:
    spec: BlockSpec
    matrix: np.ndarray
    dim: int


@dataclass(frozen=True)
class TruncatedOperator:
    """Direct sum of truncated blocks approximating a normal-form generator."""

    blocks: tuple[TruncatedBlock, ...]
    N: int
    k: int

    @property
    def total_dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    def matrix(self) -> np.ndarray:
        total = self.total_dim
        out = np.zeros((total, total), dtype=complex)
        at = 0
        for b in self.blocks:
            out[at : at + b.dim, at : at + b.dim] = b.matrix
            at += b.dim
        return out


@dataclass(frozen=True)
class BlockReport:
    """Spectral data of one block against its target circle."""

    block_index: int
    spec: BlockSpec
    eigenvalues: np.ndarray | None        # circulant truncation: genuine
    eigen_deviations: np.ndarray | None
    artifact_eigenvalues: np.ndarray | None  # nilpotent truncation: artifacts
    symbol_curve: SymbolCurve
    symbol_deviation: float


@dataclass(frozen=True)
class SpectrumReport:
    target: EarringGeometry
    blocks: tuple[BlockReport, ...]
    max_deviation: float          # bilateral eigenvalues vs target circles
    max_symbol_deviation: float   # symbol images vs target circles


def write_matrix_csv(matrix: np.ndarray, fp) -> None:
    """Sparse triplet export: one `row,col,re,im` line per nonzero entry."""
    fp.write("row,col,re,im\n")
    rows, cols = np.nonzero(matrix)
    for i, j in zip(rows, cols):
        v = matrix[i, j]
        fp.write(f"{i},{j},{v.real:.17g},{v.imag:.17g}\n")


def unilateral_shift(d: int) -> np.ndarray:
    """S e_n = e_{n+1} truncated to d dimensions (top vector annihilated)."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    return np.eye(d, k=-1, dtype=complex)


def bergman_weight(n: int) -> float:
    return sqrt((n + 1) / (n + 2))


def bergman_tz(d: int) -> np.ndarray:
    """Coordinate multiplication on the disk: entry (n+1, n) = sqrt((n+1)/(n+2))."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    weights = [bergman_weight(n) for n in range(d - 1)]
    return np.diag(np.asarray(weights, dtype=complex), k=-1)


def bilateral_shift_circulant(d: int) -> np.ndarray:
    """Cyclic permutation truncation of the bilateral shift; exactly unitary
    with the d-th roots of unity as eigenvalues."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def normal_form_block(j: int, bilateral: bool) -> BlockSpec:
    """Block j of the canonical generator: ((j+1)/j) B - 1/j."""
    kind = BlockKind.BILATERAL if bilateral else BlockKind.UNILATERAL_POWER
    return BlockSpec(
        kind=kind,
        scale=Fraction(j + 1, j),
        offset=Fraction(-1, j),
        power=1 if bilateral else 2,
    )


def block_matrix(spec: BlockSpec, d: int) -> np.ndarray:
    """Materialize scale * B + offset * I at truncation dimension d."""
    if spec.kind is BlockKind.IDENTITY:
        base = np.eye(d, dtype=complex)
    elif spec.kind is BlockKind.BILATERAL:
        base = bilateral_shift_circulant(d)
    elif spec.kind is BlockKind.BERGMAN:
        base = bergman_tz(d)
    else:
        base = np.linalg.matrix_power(unilateral_shift(d), spec.power)
        if spec.adjoint:
            base = base.conj().T
    return complex(spec.scale) * base + complex(spec.offset) * np.eye(d, dtype=complex)


def block_symbol(spec: BlockSpec, samples: int = 2048) -> SymbolCurve:
    """Boundary symbol of the block as a sampled curve."""
    if spec.kind is BlockKind.IDENTITY:
        return constant_curve(complex(spec.scale + spec.offset), samples)
    if spec.kind in (BlockKind.BILATERAL, BlockKind.BERGMAN):
        p = 1
    else:
        p = -spec.power if spec.adjoint else spec.power
    return circle_power_curve(p, samples, scale=complex(spec.scale), offset=complex(spec.offset))


def block_label(spec: BlockSpec) -> str:
    """Canonical text form, e.g. "2 S^2 - 1", "3/2 U - 1/2", "Id"."""
    if spec.kind is BlockKind.IDENTITY:
        return "Id"
    if spec.kind is BlockKind.BILATERAL:
        sym = "U"
    elif spec.kind is BlockKind.BERGMAN:
        sym = "Tz"
    else:
        sym = "S*" if spec.adjoint else "S"
        if spec.power > 1:
            sym += f"^{spec.power}"
    head = sym if spec.scale == 1 else f"{spec.scale} {sym}"
    if spec.offset == 0:
        return head
    sign = "-" if spec.offset < 0 else "+"
    return f"{head} {sign} {abs(spec.offset)}"


def build_generator(N: int, k: int, d: int) -> TruncatedOperator:
    """Truncated canonical generator with k unilateral(S^2) blocks followed
    by N - k circulant bilateral blocks, each of dimension d."""
    if not (0 <= k <= N) or N < 1:
        raise InvalidInvariantError(f"need 1 <= N and 0 <= k <= N, got ({N}, {k})")
    if d < 4:
        raise ValueError(f"need d >= 4, got {d}")
    blocks = []
    for j in range(1, N + 1):
        spec = normal_form_block(j, bilateral=j > k)
        blocks.append(TruncatedBlock(spec, block_matrix(spec, d), d))
    return TruncatedOperator(tuple(blocks), N, k)


def fredholm_index(symbol: SymbolCurve, point: complex = 0.0) -> int:
    """Index of a Toeplitz-type operator from its symbol: minus the winding."""
    return -winding_around(symbol, point)


def block_fredholm_index(spec: BlockSpec, samples: int = 2048) -> int:
    """Fredholm index of a block.  Bilateral blocks are invertible on the
    two-sided sequence space, so their index is 0 regardless of the
    symbol winding; everything else goes through the symbol."""
    if spec.kind in (BlockKind.BILATERAL, BlockKind.IDENTITY):
        return 0
    return fredholm_index(block_symbol(spec, samples))


def hermitian_sqrt_psd(H: np.ndarray) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix; eigenvalues pushed
    below zero by rounding are clamped."""
    w, V = np.linalg.eigh((H + H.conj().T) / 2.0)
    w = np.clip(w, 0.0, None)
    return (V * np.sqrt(w)) @ V.conj().T


def bott_projection(T: np.ndarray) -> np.ndarray:
    """2d x 2d projection [[T T*, T D], [D T*, I - T* T]] with
    D = sqrt(I - T* T), for a contraction T.

    The column V = (T; D) is an isometry (V* V = I), which is exactly why
    P = V V* is a projection.
    """
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ShapeError(f"need a square matrix, got shape {T.shape}")
    norm = float(np.linalg.norm(T, 2))
    if norm > 1.0 + CONTRACTION_SLACK:
        raise NotContractionError(f"operator norm {norm} exceeds 1")
    d = T.shape[0]
    D = hermitian_sqrt_psd(np.eye(d) - T.conj().T @ T)
    V = np.vstack([T, D])
    return V @ V.conj().T


def isometry_column_defect(T: np.ndarray) -> float:
    """|| V* V - I || for V = (T; sqrt(I - T* T))."""
    d = T.shape[0]
    D = hermitian_sqrt_psd(np.eye(d) - T.conj().T @ T)
    V = np.vstack([np.asarray(T, dtype=complex), D])
    return float(np.linalg.norm(V.conj().T @ V - np.eye(d), 2))


def spectrum_report(
    op: TruncatedOperator, target: EarringGeometry, symbol_samples: int = 512
) -> SpectrumReport:
    """Compare the truncated generator against the earring.

    Circulant blocks contribute genuine eigenvalues and their deviation
    from the assigned circle; unilateral blocks contribute their symbol
    image (exactly on the circle) plus the truncation-artifact
    eigenvalues, which are reported but never measured against the
    target.
    """
    if len(op.blocks) != target.N:
        raise ShapeError(f"operator has {len(op.blocks)} blocks, target has {target.N} circles")
    reports = []
    eig_devs: list[float] = []
    sym_devs: list[float] = []
    for idx, block in enumerate(op.blocks, start=1):
        center, radius = target.circle(idx)
        curve = block_symbol(block.spec, symbol_samples)
        curve = SymbolCurve(curve.ts, curve.values, np.full(len(curve), idx, dtype=np.int64))
        sym_dev = float(np.max(np.abs(np.abs(curve.values - center) - radius)))
        sym_devs.append(sym_dev)
        lam = np.linalg.eigvals(block.matrix)
        if block.spec.kind is BlockKind.BILATERAL:
            devs = np.abs(np.abs(lam - center) - radius)
            eig_devs.append(float(devs.max()))
            reports.append(
                BlockReport(idx, block.spec, lam, devs, None, curve, sym_dev)
            )
        else:
            reports.append(
                BlockReport(idx, block.spec, None, None, lam, curve, sym_dev)
            )
    return SpectrumReport(
        target=target,
        blocks=tuple(reports),
        max_deviation=max(eig_devs, default=0.0),
        max_symbol_deviation=max(sym_devs, default=0.0),
    )


def k1_generator_blocks(N: int, k: int, i: int) -> tuple[BlockSpec, ...]:
    """Block normal form of the i-th odd-K-group generator lift.

    For k = 0 (orientable) there are N generators: generator i is the
    identity everywhere except block i, which carries ((i+1)/i) U - 1/i.
    For k >= 1 there are N - 1 generators: generator i puts
    ((i+2)/(i+1)) B - 1/(i+1) in block i+1 (B matching the block type),
    and for i < k additionally 2 S*^2 - 1 in block 1 to cancel the index.
    """
    if not (0 <= k <= N) or N < 1:
        raise InvalidInvariantError(f"need 1 <= N and 0 <= k <= N, got ({N}, {k})")
    last = N if k == 0 else N - 1
    if not (1 <= i <= last):
        raise IndexRangeError(f"generator index {i} outside 1..{last} for (N, k) = ({N}, {k})")
    blocks = [IDENTITY_BLOCK] * N
    if k == 0:
        blocks[i - 1] = normal_form_block(i, bilateral=True)
        return tuple(blocks)
    blocks[i] = normal_form_block(i + 1, bilateral=i + 1 > k)
    if i < k:
        blocks[0] = BlockSpec(
            BlockKind.UNILATERAL_POWER,
            scale=Fraction(2),
            offset=Fraction(-1),
            power=2,
            adjoint=True,
        )
    return tuple(blocks)
