"""Hawaiian-earring geometry, boundary symbol curves, and winding numbers.

The classifying curve of a supported word maps the boundary circle onto a
union of N circles through the common base point 1: circle j has center
-1/j and radius (j+1)/j, so the origin lies inside every circle at
distance exactly 1.  Winding numbers are computed by the discrete
argument principle on sampled curves and cross-checked combinatorially.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi
from typing import Iterable, TextIO

import numpy as np

from .errors import NearZeroError, NonIntegralError, UnsupportedWordError
from .words import BoundaryWord, PairStructure, partition_from_pairs

#: allowed deviation, in turns, between the argument sum and an integer
WINDING_RESIDUAL_TOL = 0.01


@dataclass(frozen=True)
class EarringGeometry:
    """N circles through the base point 1, all containing the origin."""

    N: int
    circles: tuple[tuple[complex, float], ...]  # (center, radius), j = 1..N

    def circle(self, j: int) -> tuple[complex, float]:
        """Center and radius of circle j (1-based)."""
        return self.circles[j - 1]


@dataclass(frozen=True)
class SymbolCurve:
    """Closed sampled curve with a per-sample circle tag.

    ``ts`` are global parameters in [0, 1), ``values`` the complex samples,
    ``tags`` the 1-based index of the circle each sample lies on (0 for
    constant or untagged segments).  The curve closes from the last sample
    back to the first.
    """

    ts: np.ndarray
    values: np.ndarray
    tags: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def write_csv(self, fp: TextIO) -> None:
        fp.write("t,re,im,circle\n")
        for t, v, tag in zip(self.ts, self.values, self.tags):
            fp.write(f"{t:.17g},{v.real:.17g},{v.imag:.17g},{int(tag)}\n")


@dataclass(frozen=True)
class WindingVector:
    """Integer winding around each earring circle and around the origin.

    The origin lies inside every circle, so around_zero is the sum of the
    per-circle entries.
    """

    per_circle: tuple[int, ...]
    around_zero: int


@dataclass(frozen=True)
class ArcSpec:
    """One boundary arc of an explicit arrangement.

    Angles are stored exactly in units of pi; start is the angle at curve
    parameter t = 0, so start > end means a clockwise traversal.
    """

    name: str
    position: int
    start_angle_pi: Fraction
    end_angle_pi: Fraction

    @property
    def sign(self) -> int:
        return +1 if self.end_angle_pi > self.start_angle_pi else -1


def earring(N: int) -> EarringGeometry:
    """Circles j = 1..N with center -1/j and radius (j+1)/j."""
    if N < 1:
        raise ValueError(f"need N >= 1, got {N}")
    circles = tuple((complex(-1.0 / j), (j + 1) / j) for j in range(1, N + 1))
    return EarringGeometry(N, circles)


def _require_single_vertex(ps: PairStructure) -> None:
    part = partition_from_pairs(ps)
    if part.vertex_count != 1:
        raise UnsupportedWordError(
            f"{part.vertex_count} vertex classes: boundary quotient is not "
            f"a wedge of {ps.N} circles"
        )


def _effective_signs(ps: PairStructure) -> dict[int, int]:
    """Traversal sign per word position after orienting every
    same-orientation pair positively (the normal-form flip)."""
    signs: dict[int, int] = {}
    for j, ((p1, s1), (p2, s2)) in enumerate(ps.occurrences):
        if ps.same_orientation[j]:
            signs[p1], signs[p2] = +1, +1
        else:
            signs[p1], signs[p2] = s1, s2
    return signs


def zeta_curve(ps: PairStructure, samples_per_arc: int = 1024) -> SymbolCurve:
    """Sampled classifying curve of a single-vertex word.

    The boundary circle splits into 2N equal arcs in word order; the arc
    holding an occurrence of letter j traverses earring circle j once at
    uniform speed, starting and ending at the base point 1.  Letter j is
    the pair at letter_id j, mapped to circle j+1 (circles are 1-based).
    """
    if samples_per_arc < 16:
        raise ValueError(f"need samples_per_arc >= 16, got {samples_per_arc}")
    _require_single_vertex(ps)
    geometry = earring(ps.N)
    signs = _effective_signs(ps)
    pos_letter = {}
    for j, (o1, o2) in enumerate(ps.occurrences):
        pos_letter[o1[0]] = j
        pos_letter[o2[0]] = j

    narcs = ps.word_length
    local = np.arange(samples_per_arc) / samples_per_arc
    ts, values, tags = [], [], []
    for pos in range(narcs):
        j = pos_letter[pos] + 1
        center, radius = geometry.circle(j)
        s = signs[pos]
        ts.append((pos + local) / narcs)
        values.append(center + radius * np.exp(2j * pi * s * local))
        tags.append(np.full(samples_per_arc, j, dtype=np.int64))
    return SymbolCurve(np.concatenate(ts), np.concatenate(values), np.concatenate(tags))


def circle_power_curve(
    power: int, samples: int = 1024, scale: complex = 1.0, offset: complex = 0.0
) -> SymbolCurve:
    """Sampled curve t -> scale * e^(2 pi i power t) + offset."""
    ts = np.arange(samples) / samples
    values = scale * np.exp(2j * pi * power * ts) + offset
    return SymbolCurve(ts, values, np.zeros(samples, dtype=np.int64))


def constant_curve(value: complex, samples: int = 64) -> SymbolCurve:
    ts = np.arange(samples) / samples
    return SymbolCurve(ts, np.full(samples, complex(value)), np.zeros(samples, dtype=np.int64))


def multiply(a: SymbolCurve, b: SymbolCurve) -> SymbolCurve:
    """Pointwise product of two curves sampled on the same parameter grid."""
    if len(a) != len(b) or not np.allclose(a.ts, b.ts):
        raise ValueError("curves must share the same parameter grid")
    return SymbolCurve(a.ts, a.values * b.values, np.zeros(len(a), dtype=np.int64))


def _closed_winding(values: np.ndarray, point: complex) -> int:
    """Argument-principle winding of a closed sample loop around a point."""
    rel = values - point
    dist = np.abs(rel)
    if len(values) > 1:
        step = float(np.max(np.abs(np.roll(values, -1) - values)))
    else:
        step = 0.0
    min_dist = float(dist.min())
    if min_dist <= 10.0 * step:
        raise NearZeroError(
            f"curve approaches the point: min distance {min_dist:.3g} "
            f"<= 10 x sampling step {step:.3g}"
        )
    increments = np.angle(np.roll(rel, -1) * np.conj(rel))
    turns = float(increments.sum()) / (2.0 * pi)
    nearest = round(turns)
    if abs(turns - nearest) >= WINDING_RESIDUAL_TOL:
        raise NonIntegralError(
            f"argument sum {turns:.6f} turns is not within "
            f"{WINDING_RESIDUAL_TOL} of an integer"
        )
    return int(nearest)


def winding_around(curve: SymbolCurve, point: complex = 0.0) -> int:
    """Integer winding of the closed curve around a point."""
    return _closed_winding(curve.values, point)


def circle_windings(ps: PairStructure) -> WindingVector:
    """Combinatorial winding vector of the classifying curve.

    Each circle is traversed once per occurrence with the occurrence sign
    (same-orientation pairs normalized positive), so circle j winds
    |s1 + s2| times: 2 for a same-orientation pair, 0 otherwise.  The
    origin sits inside every circle, giving around_zero = 2k.
    """
    _require_single_vertex(ps)
    per = tuple(2 if same else 0 for same in ps.same_orientation)
    return WindingVector(per_circle=per, around_zero=sum(per))


def numeric_circle_windings(curve: SymbolCurve, geometry: EarringGeometry) -> WindingVector:
    """Winding vector measured from the samples by the argument principle."""
    per = []
    for j in range(1, geometry.N + 1):
        center, _ = geometry.circle(j)
        mask = curve.tags == j
        if not mask.any():
            per.append(0)
            continue
        per.append(_closed_winding(curve.values[mask], center))
    return WindingVector(per_circle=tuple(per), around_zero=winding_around(curve, 0.0))


def on_earring_deviation(curve: SymbolCurve, geometry: EarringGeometry) -> float:
    """max over samples of min over circles of | |v - center| - radius |."""
    devs = np.full(len(curve), np.inf)
    for j in range(1, geometry.N + 1):
        center, radius = geometry.circle(j)
        devs = np.minimum(devs, np.abs(np.abs(curve.values - center) - radius))
    return float(devs.max())


def arc_parametrization(kind: str, size: int) -> tuple[BoundaryWord, tuple[ArcSpec, ...]]:
    """Explicit arc arrangement with exact angle endpoints.

    ``("orientable", g)`` divides the boundary into 4g arcs
    a_1 .. a_2g a_1^-1 .. a_2g^-1 with a_k(t) = exp(i pi (k-1+t)/(2g));
    ``("non-orientable", n)`` into 2n arcs a_1 .. a_n b_n .. b_1 with
    a_k(t) = exp(i pi (k-1+t)/n) and b_k(t) = exp(i pi (-k+t)/n), all
    traversed counterclockwise.  Returns the boundary word in position
    order together with the per-arc angle table.
    """
    if size < 1:
        raise ValueError(f"need size >= 1, got {size}")
    arcs: list[ArcSpec] = []
    pairs: list[tuple[str, int]] = []
    if kind == "orientable":
        g = size
        for k in range(1, 2 * g + 1):
            arcs.append(ArcSpec(f"a{k}", k - 1, Fraction(k - 1, 2 * g), Fraction(k, 2 * g)))
            pairs.append((f"a{k}", +1))
        for k in range(1, 2 * g + 1):
            arcs.append(
                ArcSpec(
                    f"a{k}^-1",
                    2 * g + k - 1,
                    Fraction(2 * g + k, 2 * g),
                    Fraction(2 * g + k - 1, 2 * g),
                )
            )
            pairs.append((f"a{k}", -1))
    elif kind == "non-orientable":
        n = size
        for k in range(1, n + 1):
            arcs.append(ArcSpec(f"a{k}", k - 1, Fraction(k - 1, n), Fraction(k, n)))
            pairs.append((f"a{k}", +1))
        # b_n .. b_1 fill the lower half circle counterclockwise
        for k in range(n, 0, -1):
            arcs.append(ArcSpec(f"b{k}", 2 * n - k, Fraction(-k, n), Fraction(-(k - 1), n)))
        pairs.extend((f"a{k}", +1) for k in range(n, 0, -1))
    else:
        raise ValueError(f"kind must be 'orientable' or 'non-orientable', got {kind!r}")
    word = BoundaryWord.from_letters(pairs)
    return word, tuple(arcs)
