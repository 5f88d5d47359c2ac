"""Boundary words and surface classification.

A boundary word lists the oriented arcs around the disk boundary, two
occurrences per letter; gluing the paired arcs produces a closed surface
in the classical picture and a subalgebra of the Toeplitz algebra in the
quantum one.  The complete quantum isomorphism invariant of a supported
word is the pair (N, k): number of letter pairs and number of pairs whose
two occurrences share an orientation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import (
    MixedSyntaxError,
    NotPairedError,
    ParseError,
    UnsupportedWordError,
)

_LONG_TOKEN = re.compile(r"[A-Za-z][A-Za-z0-9]*(\^-1)?")
_SEPARATORS = re.compile(r"[\s,]+")


@dataclass(frozen=True)
class OrientedLetter:
    """One arc occurrence: which letter, and whether it runs with (+1) or
    against (-1) the counterclockwise boundary traversal."""

    letter_id: int
    sign: int

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.letter_id < 0:
            raise ValueError(f"letter_id must be >= 0, got {self.letter_id}")


@dataclass(frozen=True)
class BoundaryWord:
    """Cyclic sequence of oriented letters around the disk boundary.

    Letter ids are canonical: contiguous from 0 and numbered in order of
    first appearance.  ``source_text`` keeps the original input for
    diagnostics and does not take part in equality.
    """

    letters: tuple[OrientedLetter, ...]
    source_text: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.letters) == 0:
            raise ValueError("a boundary word needs at least one letter")
        seen: list[int] = []
        for occ in self.letters:
            if occ.letter_id not in seen:
                seen.append(occ.letter_id)
        if seen != list(range(len(seen))):
            raise ValueError(
                "letter ids must be contiguous and numbered by first appearance; "
                "use BoundaryWord.from_letters to normalize"
            )

    @classmethod
    def from_letters(
        cls, pairs: Iterable[tuple[int, int]], source_text: str = ""
    ) -> "BoundaryWord":
        """Build a word from (letter_key, sign) pairs, relabeling the keys
        to canonical ids in order of first appearance."""
        ids: dict[object, int] = {}
        out = []
        for key, sign in pairs:
            if key not in ids:
                ids[key] = len(ids)
            out.append(OrientedLetter(ids[key], sign))
        return cls(tuple(out), source_text)

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class PairStructure:
    """Occurrence table of a fully paired word."""

    N: int
    word_length: int
    # occurrences[j] = ((pos1, sign1), (pos2, sign2)) with pos1 < pos2
    occurrences: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    same_orientation: tuple[bool, ...]

    @property
    def k(self) -> int:
        return sum(self.same_orientation)


@dataclass(frozen=True)
class VertexPartition:
    """Partition of the 2N arc endpoints under the glueing relations.

    Endpoint P_i sits between arc i and arc i+1 (cyclically), so arc i
    runs from P_{i-1} to P_i counterclockwise.
    """

    classes: tuple[tuple[int, ...], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.classes)


class SurfaceKind(Enum):
    ORIENTABLE = "orientable"
    NON_ORIENTABLE = "non-orientable"
    SPHERE = "sphere"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class SurfaceClass:
    """Classification result: classical type plus quantum data.

    ``genus`` is set for orientable surfaces, ``euler_genus`` (= N) for
    non-orientable ones, ``reason`` for unsupported words.  ``k`` counts
    the same-orientation pairs (0 for orientable words).
    """

    kind: SurfaceKind
    N: int
    euler_characteristic: int
    vertex_count: int
    genus: int | None = None
    euler_genus: int | None = None
    k: int | None = None
    reason: str | None = None

    @property
    def supported(self) -> bool:
        return self.kind is not SurfaceKind.UNSUPPORTED


SPHERE_INVARIANT = (1, -1)


def parse_word(text: str) -> BoundaryWord:
    """Parse boundary-word text in compact or long form.

    Compact form is a run of ASCII letters with no separators: each letter
    is one occurrence and uppercase means the inverse of the lowercase
    letter ("abAB").  Long form separates identifier tokens by whitespace
    or commas, with an optional "^-1" suffix ("a1 b1 a1^-1 b1^-1").  Text
    without separators that contains digits or "^" is read as a single
    long token.

    Raises ParseError (with byte offset) on malformed input and
    MixedSyntaxError when a bare single uppercase token, the compact
    inverse notation, appears inside a long-form word.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty word", offset=0)
    base = text.index(stripped[0])

    if not _SEPARATORS.search(stripped):
        if stripped.isalpha() and stripped.isascii():
            pairs = [(c.lower(), +1 if c.islower() else -1) for c in stripped]
            return BoundaryWord.from_letters(pairs, text)
        if re.fullmatch(r"[A-Za-z0-9^\-]+", stripped) and any(
            c.isdigit() or c == "^" for c in stripped
        ):
            return BoundaryWord.from_letters(
                [_long_token(stripped, base)], text
            )
        # neither pure compact nor a single long token: locate the bad byte
        for i, c in enumerate(stripped):
            if not (c.isalpha() and c.isascii()):
                raise ParseError(f"invalid character {c!r}", offset=base + i)
        raise ParseError("unrecognized word syntax", offset=base)

    pairs = []
    pos = 0
    for chunk in _SEPARATORS.split(stripped):
        if not chunk:
            continue
        start = base + stripped.index(chunk, pos)
        pos = start - base + len(chunk)
        if len(chunk) == 1 and chunk.isupper() and chunk.isalpha():
            raise MixedSyntaxError(
                f"compact inverse token {chunk!r} inside a long-form word; "
                f"write {chunk.lower()}^-1",
                offset=start,
            )
        pairs.append(_long_token(chunk, start))
    return BoundaryWord.from_letters(pairs, text)


def _long_token(chunk: str, offset: int) -> tuple[str, int]:
    m = _LONG_TOKEN.match(chunk)
    if m is None or m.end() != len(chunk):
        bad = offset + (m.end() if m else 0)
        raise ParseError(f"malformed token {chunk!r}", offset=bad)
    if chunk.endswith("^-1"):
        return chunk[:-3], -1
    return chunk, +1


def render(word: BoundaryWord) -> str:
    """Canonical long-form text: letter j is named a<j+1>, inverses get
    the ^-1 suffix.  parse_word(render(w)) == w for every word."""
    toks = []
    for occ in word.letters:
        name = f"a{occ.letter_id + 1}"
        toks.append(name if occ.sign > 0 else name + "^-1")
    return " ".join(toks)


def pair_structure(word: BoundaryWord) -> PairStructure:
    """Group the occurrences by letter; every letter must occur exactly twice."""
    table: dict[int, list[tuple[int, int]]] = {}
    for pos, occ in enumerate(word.letters):
        table.setdefault(occ.letter_id, []).append((pos, occ.sign))
    bad = {j: len(o) for j, o in table.items() if len(o) != 2}
    if bad:
        detail = ", ".join(f"letter {j} occurs {c} time(s)" for j, c in sorted(bad.items()))
        raise NotPairedError(f"word is not an arc pairing: {detail}")
    occurrences = tuple(tuple(table[j]) for j in range(len(table)))
    same = tuple(o[0][1] == o[1][1] for o in occurrences)
    return PairStructure(
        N=len(table),
        word_length=len(word),
        occurrences=occurrences,  # type: ignore[arg-type]
        same_orientation=same,
    )


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def partition_from_pairs(ps: PairStructure) -> VertexPartition:
    """Endpoint partition induced by the glueing relations.

    An occurrence with sign -1 traverses its arc clockwise, so its curve
    start sits at the counterclockwise-later endpoint; matching curve
    parameters then merges start with start and end with end.
    """
    m = 2 * ps.N
    uf = _UnionFind(m)
    for (i, si), (j, sj) in ps.occurrences:
        if si == sj:
            uf.union((i - 1) % m, (j - 1) % m)
            uf.union(i % m, j % m)
        else:
            uf.union((i - 1) % m, j % m)
            uf.union(i % m, (j - 1) % m)
    groups: dict[int, list[int]] = {}
    for x in range(m):
        groups.setdefault(uf.find(x), []).append(x)
    classes = tuple(tuple(sorted(g)) for g in sorted(groups.values()))
    return VertexPartition(classes)


def vertex_classes(word: BoundaryWord) -> VertexPartition:
    """Union-find over the 2N arc endpoints of a paired word."""
    return partition_from_pairs(pair_structure(word))


def classify(word: BoundaryWord) -> SurfaceClass:
    """Classify the closed surface defined by the word.

    Every supported word collapses all arc endpoints to a single vertex
    (the wedge-of-circles case), except the sphere pattern a a^-1 whose
    two endpoints stay distinct.  For the quotient CW complex with V
    vertices, N edges and one face, chi = V - N + 1.
    """
    ps = pair_structure(word)
    part = partition_from_pairs(ps)
    v = part.vertex_count
    chi = v - ps.N + 1

    if ps.N == 1 and not ps.same_orientation[0]:
        return SurfaceClass(
            kind=SurfaceKind.SPHERE,
            N=1,
            euler_characteristic=2,
            vertex_count=v,
        )
    if v == 1:
        k = ps.k
        if k == 0:
            if ps.N % 2 != 0:
                raise AssertionError(
                    "orientable single-vertex word with odd N; "
                    "chi = 2 - N must be even"
                )
            return SurfaceClass(
                kind=SurfaceKind.ORIENTABLE,
                N=ps.N,
                euler_characteristic=chi,
                vertex_count=1,
                genus=ps.N // 2,
                k=0,
            )
        return SurfaceClass(
            kind=SurfaceKind.NON_ORIENTABLE,
            N=ps.N,
            euler_characteristic=chi,
            vertex_count=1,
            euler_genus=ps.N,
            k=k,
        )
    cycle_rank = ps.N - v + 1
    return SurfaceClass(
        kind=SurfaceKind.UNSUPPORTED,
        N=ps.N,
        euler_characteristic=chi,
        vertex_count=v,
        reason=(
            f"{v} vertex classes: boundary quotient is a graph with "
            f"{v} vertices, {ps.N} edges, cycle rank {cycle_rank}, "
            f"not a wedge of {ps.N} circles"
        ),
    )


def quantum_invariant(word: BoundaryWord) -> tuple[int, int]:
    """Complete isomorphism invariant (N, k) of the quantum surface.

    The sphere gets the sentinel (1, -1), distinct from every (N, k)
    with k >= 0.
    """
    cls = classify(word)
    if cls.kind is SurfaceKind.UNSUPPORTED:
        raise UnsupportedWordError(cls.reason or "unsupported word")
    if cls.kind is SurfaceKind.SPHERE:
        return SPHERE_INVARIANT
    assert cls.k is not None
    return (cls.N, cls.k)


def is_isomorphic(a: BoundaryWord, b: BoundaryWord, mode: str = "quantum") -> bool:
    """Compare two words as quantum surfaces ((N, k) equality) or as
    classical surfaces (homeomorphism type, ignoring k)."""
    if mode == "quantum":
        return quantum_invariant(a) == quantum_invariant(b)
    if mode == "classical":
        ca, cb = classify(a), classify(b)
        for c in (ca, cb):
            if c.kind is SurfaceKind.UNSUPPORTED:
                raise UnsupportedWordError(c.reason or "unsupported word")
        if ca.kind is not cb.kind:
            return False
        if ca.kind is SurfaceKind.ORIENTABLE:
            return ca.genus == cb.genus
        if ca.kind is SurfaceKind.NON_ORIENTABLE:
            return ca.euler_genus == cb.euler_genus
        return True  # sphere
    raise ValueError(f"mode must be 'quantum' or 'classical', got {mode!r}")


# --- word transformations (symmetries the invariant must not see) ---


def relabel(word: BoundaryWord, perm: Sequence[int]) -> BoundaryWord:
    """Permute letter identities; the result is renormalized to canonical ids."""
    n = len({occ.letter_id for occ in word.letters})
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation of the letter ids")
    return BoundaryWord.from_letters(
        [(perm[occ.letter_id], occ.sign) for occ in word.letters]
    )


def rotate(word: BoundaryWord, shift: int) -> BoundaryWord:
    """Cyclic rotation of the reading start point."""
    s = shift % len(word)
    seq = word.letters[s:] + word.letters[:s]
    return BoundaryWord.from_letters([(o.letter_id, o.sign) for o in seq])


def flip(word: BoundaryWord) -> BoundaryWord:
    """Reverse the orientation of every occurrence."""
    return BoundaryWord.from_letters(
        [(o.letter_id, -o.sign) for o in word.letters]
    )


def reverse(word: BoundaryWord) -> BoundaryWord:
    """Mirror reading of the circle: reversed order, flipped signs."""
    return BoundaryWord.from_letters(
        [(o.letter_id, -o.sign) for o in reversed(word.letters)]
    )


def standard_word(N: int, k: int) -> BoundaryWord:
    """A canonical single-vertex word with invariant (N, k).

    k = 0 needs N even (two opposite pairs per handle); for k >= 1 an odd
    number of opposite pairs is absorbed by the single-vertex motif
    x y x y^-1, and the rest split into crosscap pairs x x and handle
    quadruples y z y^-1 z^-1.  (1, -1) gives the sphere word a a^-1.
    """
    if (N, k) == SPHERE_INVARIANT:
        return BoundaryWord.from_letters([(0, +1), (0, -1)], "a a^-1")
    if not (0 <= k <= N):
        raise ValueError(f"need 0 <= k <= N, got (N, k) = ({N}, {k})")
    if k == 0 and N % 2 != 0:
        raise ValueError("k = 0 requires even N (orientable words pair handles)")
    pairs: list[tuple[int, int]] = []
    nxt = 0

    def fresh() -> int:
        nonlocal nxt
        nxt += 1
        return nxt - 1

    same, opp = k, N - k
    if same >= 1 and opp % 2 == 1:
        x, y = fresh(), fresh()
        pairs += [(x, +1), (y, +1), (x, +1), (y, -1)]
        same -= 1
        opp -= 1
    for _ in range(same):
        x = fresh()
        pairs += [(x, +1), (x, +1)]
    for _ in range(opp // 2):
        y, z = fresh(), fresh()
        pairs += [(y, +1), (z, +1), (y, -1), (z, -1)]
    return BoundaryWord.from_letters(pairs)
