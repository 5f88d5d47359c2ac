"""Self-contained invariant suite behind the ``verify`` command.

Each check re-derives one documented property of the package from
scratch (independent oracles where available: brute-force minors for the
Smith reduction, the argument principle for combinatorial windings, a
hard-coded classical K-group table) and reports pass/fail with a short
deterministic detail string.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from . import snf
from .curves import (
    circle_power_curve,
    circle_windings,
    earring,
    multiply,
    numeric_circle_windings,
    on_earring_deviation,
    winding_around,
    zeta_curve,
)
from .ktheory import (
    AbelianGroup,
    index_map,
    kgroups,
    normal_form_index_map,
)
from .operators import (
    BlockKind,
    bergman_tz,
    bergman_weight,
    block_fredholm_index,
    bott_projection,
    build_generator,
    fredholm_index,
    isometry_column_defect,
    k1_generator_blocks,
    normal_form_block,
    spectrum_report,
)
from .words import (
    BoundaryWord,
    SurfaceKind,
    classify,
    flip,
    is_isomorphic,
    pair_structure,
    parse_word,
    quantum_invariant,
    relabel,
    render,
    reverse,
    rotate,
    standard_word,
)


@dataclass(frozen=True)
class VerifyConfig:
    dim: int = 256
    tol: float = 1e-9
    seed: int = 20260810
    corrupt_weight: bool = False  # self-test fixture: miscalibrate one weight


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    passed: bool
    detail: str


def random_paired_word(rng: random.Random, max_pairs: int = 6) -> BoundaryWord:
    n = rng.randint(1, max_pairs)
    slots = list(range(n)) * 2
    rng.shuffle(slots)
    return BoundaryWord.from_letters([(j, rng.choice((+1, -1))) for j in slots])


def random_single_vertex_words(
    seed: int, count: int, max_pairs: int = 6
) -> list[BoundaryWord]:
    """Random paired words with a single endpoint class (wedge words)."""
    rng = random.Random(seed)
    out: list[BoundaryWord] = []
    while len(out) < count:
        w = random_paired_word(rng, max_pairs)
        if classify(w).kind in (SurfaceKind.ORIENTABLE, SurfaceKind.NON_ORIENTABLE):
            out.append(w)
    return out


def family_words() -> dict[str, BoundaryWord]:
    """Orientable g = 1..3, non-orientable n = 1..4 with every k, sphere."""
    words = {f"T{g}": standard_word(2 * g, 0) for g in (1, 2, 3)}
    for n in range(1, 5):
        for k in range(1, n + 1):
            words[f"P{n}_{k}"] = standard_word(n, k)
    words["S2"] = parse_word("aA")
    return words


def _corpus(cfg: VerifyConfig, count: int = 60, max_pairs: int = 6):
    return list(family_words().values()) + random_single_vertex_words(
        cfg.seed, count, max_pairs
    )


def classical_ktable(cls) -> tuple[AbelianGroup, AbelianGroup]:
    """Topological K-theory of the classical closed surfaces."""
    if cls.kind is SurfaceKind.SPHERE:
        return AbelianGroup(2), AbelianGroup(0)
    if cls.kind is SurfaceKind.ORIENTABLE:
        return AbelianGroup(2), AbelianGroup(2 * cls.genus)
    return AbelianGroup(1, (2,)), AbelianGroup(cls.euler_genus - 1)


# --- word-model checks ---


def check_round_trip(cfg: VerifyConfig):
    words = _corpus(cfg)
    bad = sum(1 for w in words if parse_word(render(w)) != w)
    return bad == 0, f"{len(words)} words, {bad} round-trip failures"


def check_symmetry_invariance(cfg: VerifyConfig):
    rng = random.Random(cfg.seed + 1)
    words = _corpus(cfg, count=40)
    bad = 0
    for w in words:
        inv = quantum_invariant(w)
        n = len({o.letter_id for o in w.letters})
        perm = list(range(n))
        rng.shuffle(perm)
        variants = [relabel(w, perm), rotate(w, rng.randrange(len(w))), flip(w), reverse(w)]
        bad += sum(1 for v in variants if quantum_invariant(v) != inv)
    return bad == 0, f"{len(words)} words x 4 symmetries, {bad} mismatches"


def check_euler_characteristic(cfg: VerifyConfig):
    words = random_single_vertex_words(cfg.seed + 2, 60)
    bad = sum(1 for w in words if classify(w).euler_characteristic != 2 - classify(w).N)
    return bad == 0, f"{len(words)} single-vertex words, {bad} with chi != 2 - N"


def check_orientable_parity(cfg: VerifyConfig):
    words = random_single_vertex_words(cfg.seed + 3, 80)
    bad = sum(1 for w in words if classify(w).k == 0 and classify(w).N % 2 != 0)
    return bad == 0, f"{len(words)} words, {bad} orientable with odd N"


def check_same_sign_never_orientable(cfg: VerifyConfig):
    rng = random.Random(cfg.seed + 4)
    total = bad = 0
    for _ in range(200):
        w = random_paired_word(rng)
        if any(pair_structure(w).same_orientation):
            total += 1
            if classify(w).kind is SurfaceKind.ORIENTABLE:
                bad += 1
    return bad == 0, f"{total} words with an equal-sign pair, {bad} misclassified"


def check_iso_equivalence(cfg: VerifyConfig):
    words = random_single_vertex_words(cfg.seed + 5, 25)
    bad = sum(1 for a in words if not is_isomorphic(a, a))
    for a, b in itertools.combinations(words, 2):
        if is_isomorphic(a, b) != is_isomorphic(b, a):
            bad += 1
    for a, b, c in itertools.islice(itertools.combinations(words, 3), 400):
        if is_isomorphic(a, b) and is_isomorphic(b, c) and not is_isomorphic(a, c):
            bad += 1
    return bad == 0, f"{len(words)} words, {bad} equivalence violations"


# --- symbol-curve checks ---


def check_windings_match(cfg: VerifyConfig):
    words = random_single_vertex_words(cfg.seed + 6, 20, max_pairs=5)
    bad = 0
    for w in words:
        ps = pair_structure(w)
        curve = zeta_curve(ps, 1024)
        numeric = numeric_circle_windings(curve, earring(ps.N))
        combinatorial = circle_windings(ps)
        if numeric != combinatorial or numeric.around_zero != 2 * ps.k:
            bad += 1
    return bad == 0, f"{len(words)} words at 1024 samples/arc, {bad} mismatches"


def check_curve_on_earring(cfg: VerifyConfig):
    words = random_single_vertex_words(cfg.seed + 7, 15, max_pairs=5)
    worst = 0.0
    for w in words:
        ps = pair_structure(w)
        worst = max(worst, on_earring_deviation(zeta_curve(ps, 256), earring(ps.N)))
    return worst <= 1e-12, f"max sample deviation from the earring {worst:.3g}"


def check_winding_additivity(cfg: VerifyConfig):
    bad = 0
    for a in range(-3, 4):
        for b in range(-3, 4):
            prod = multiply(circle_power_curve(a, 2048), circle_power_curve(b, 2048))
            if winding_around(prod, 0.0) != a + b:
                bad += 1
    return bad == 0, f"49 products u^a u^b, {bad} not additive"


def check_sample_doubling(cfg: VerifyConfig):
    words = random_single_vertex_words(cfg.seed + 8, 10, max_pairs=4)
    bad = 0
    for w in words:
        ps = pair_structure(w)
        w1 = numeric_circle_windings(zeta_curve(ps, 1024), earring(ps.N))
        w2 = numeric_circle_windings(zeta_curve(ps, 2048), earring(ps.N))
        if w1 != w2:
            bad += 1
    return bad == 0, f"{len(words)} words at 1024 vs 2048 samples/arc, {bad} changed"


# --- operator-model checks ---


def check_bott_projection(cfg: VerifyConfig):
    rng = np.random.default_rng(cfg.seed + 9)
    worst = 0.0
    for d in (8, 32, 128, 256):
        M = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        T = M / (np.linalg.norm(M, 2) * (1.0 + rng.random()))
        P = bott_projection(T)
        worst = max(
            worst,
            float(np.linalg.norm(P @ P - P, 2)),
            float(np.linalg.norm(P - P.conj().T, 2)),
        )
    P = bott_projection(bergman_tz(256))
    worst = max(worst, float(np.linalg.norm(P @ P - P, 2)))
    herm = float(np.linalg.norm(P - P.conj().T, 2))
    ok = worst <= 1e-10 and herm <= 1e-12
    return ok, f"max ||P^2 - P||, ||P - P*|| defect {max(worst, herm):.3g}"


def check_isometry_column(cfg: VerifyConfig):
    rng = np.random.default_rng(cfg.seed + 10)
    worst = isometry_column_defect(bergman_tz(256))
    for d in (8, 64, 256):
        M = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        T = M / (np.linalg.norm(M, 2) * 1.25)
        worst = max(worst, isometry_column_defect(T))
    return worst <= 1e-12, f"max ||V*V - I|| = {worst:.3g}"


def check_index_law(cfg: VerifyConfig):
    bad = [k for k in range(-5, 6) if fredholm_index(circle_power_curve(k, 1024)) != -k]
    return not bad, f"powers -5..5, failures at {bad if bad else 'none'}"


def check_pair_windings_and_block_index(cfg: VerifyConfig):
    words = random_single_vertex_words(cfg.seed + 11, 12, max_pairs=5)
    bad = 0
    for w in words:
        ps = pair_structure(w)
        numeric = numeric_circle_windings(zeta_curve(ps, 1024), earring(ps.N))
        for j, same in enumerate(ps.same_orientation):
            if same and numeric.per_circle[j] != 2:
                bad += 1
    for j in range(1, 7):
        if block_fredholm_index(normal_form_block(j, bilateral=False)) != -2:
            bad += 1
    return bad == 0, f"{len(words)} words + 6 crosscap blocks, {bad} failures"


def check_circulant_spectrum(cfg: VerifyConfig):
    worst_unitary = 0.0
    worst_eig = 0.0
    worst_sym = 0.0
    for N, k in ((2, 0), (3, 1), (4, 2)):
        op = build_generator(N, k, cfg.dim)
        for block in op.blocks:
            if block.spec.kind is BlockKind.BILATERAL:
                M = block.matrix
                U = (M - complex(block.spec.offset) * np.eye(cfg.dim)) / complex(
                    block.spec.scale
                )
                worst_unitary = max(
                    worst_unitary,
                    float(np.linalg.norm(U.conj().T @ U - np.eye(cfg.dim), 2)),
                )
        report = spectrum_report(op, earring(N))
        worst_eig = max(worst_eig, report.max_deviation)
        worst_sym = max(worst_sym, report.max_symbol_deviation)
    ok = worst_unitary <= 1e-12 and worst_eig <= cfg.tol and worst_sym <= 1e-14
    return ok, (
        f"dim {cfg.dim}: unitarity defect {worst_unitary:.3g}, eigenvalue "
        f"deviation {worst_eig:.3g}, symbol deviation {worst_sym:.3g}"
    )


def check_bergman_weights(cfg: VerifyConfig):
    weights = [bergman_weight(n) for n in range(2001)]
    if cfg.corrupt_weight:
        weights[900] -= 5e-3
    monotone = all(a < b for a, b in zip(weights, weights[1:]))
    converged = all(1 - w < 1e-3 for w in weights[500:])
    return monotone and converged, (
        f"weights 0..2000: monotone={monotone}, 1 - w < 1e-3 beyond 500={converged}"
    )


def check_k1_block_lists(cfg: VerifyConfig):
    bad = 0
    for N in range(1, 6):
        for k in range(0, N + 1):
            count = N if k == 0 else N - 1
            seen = set()
            for i in range(1, count + 1):
                blocks = k1_generator_blocks(N, k, i)
                seen.add(blocks)
                non_id = sum(1 for b in blocks if b.kind is not BlockKind.IDENTITY)
                if non_id != (2 if 0 < i < k else 1):
                    bad += 1
            if len(seen) != count:
                bad += 1
    return bad == 0, f"(N, k) grid up to N = 5, {bad} malformed generator lists"


# --- k-theory checks ---


def check_ktable(cfg: VerifyConfig):
    bad = []
    for name, w in family_words().items():
        cls = classify(w)
        kg = kgroups(cls)
        if (kg.k0, kg.k1) != classical_ktable(cls):
            bad.append(name)
    return not bad, f"{len(family_words())} family words, failures: {bad if bad else 'none'}"


def check_rank_duality(cfg: VerifyConfig):
    words = random_single_vertex_words(cfg.seed + 12, 40)
    bad = 0
    for w in words:
        cls = classify(w)
        kg = kgroups(cls)
        ind = normal_form_index_map(cls)
        gcd = math.gcd(*ind.vector) if any(ind.vector) else 0
        if kg.k1.free_rank + ind.rank != cls.N:
            bad += 1
        if kg.k0.torsion != ((gcd,) if gcd >= 2 else ()):
            bad += 1
    return bad == 0, f"{len(words)} words, {bad} duality violations"


def check_symbol_classes_in_kernel(cfg: VerifyConfig):
    bad = 0
    for N in range(1, 6):
        for k in range(0, N + 1):
            if k == 0 and N % 2:
                continue
            cls = classify(standard_word(N, k))
            ind = normal_form_index_map(cls)
            for gen in kgroups(cls).k1_generators:
                if ind.apply(gen.symbol_class) != 0:
                    bad += 1
    return bad == 0, f"(N, k) grid up to N = 5, {bad} classes outside ker(ind)"


def check_index_vs_windings(cfg: VerifyConfig):
    words = random_single_vertex_words(cfg.seed + 13, 12, max_pairs=5)
    bad = 0
    for w in words:
        ps = pair_structure(w)
        numeric = numeric_circle_windings(zeta_curve(ps, 1024), earring(ps.N))
        if index_map(ps).vector != numeric.per_circle:
            bad += 1
    return bad == 0, f"{len(words)} words, {bad} index/winding mismatches"


def check_iso_implies_kgroups(cfg: VerifyConfig):
    words = random_single_vertex_words(cfg.seed + 14, 30)
    bad = 0
    for a, b in itertools.combinations(words, 2):
        if is_isomorphic(a, b) and kgroups(classify(a)) != kgroups(classify(b)):
            bad += 1
    return bad == 0, f"{len(words)} words pairwise, {bad} K-group mismatches"


def check_classical_table(cfg: VerifyConfig):
    words = _corpus(cfg, count=30)
    bad = 0
    for w in words:
        cls = classify(w)
        kg = kgroups(cls)
        if (kg.k0, kg.k1) != classical_ktable(cls):
            bad += 1
    return bad == 0, f"{len(words)} words vs classical table, {bad} mismatches"


def _det_bruteforce(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += (-1) ** inv * prod
    return total


def _invariant_factors_bruteforce(A):
    m, n = len(A), len(A[0])
    factors = []
    d_prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, _det_bruteforce([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        factors.append(g // d_prev)
        d_prev = g
    return tuple(factors)


def check_snf_oracle(cfg: VerifyConfig):
    rng = random.Random(cfg.seed + 15)
    bad = 0
    for _ in range(100):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        if snf.smith_normal_form(A).invariant_factors != _invariant_factors_bruteforce(A):
            bad += 1
    return bad == 0, f"100 random matrices <= 4x4, {bad} oracle disagreements"


CHECKS = (
    ("word-model", "parse/render round trip", check_round_trip),
    ("word-model", "invariant under relabel/rotate/flip/reverse", check_symmetry_invariance),
    ("word-model", "single-vertex Euler characteristic chi = 2 - N", check_euler_characteristic),
    ("word-model", "orientable words have even N", check_orientable_parity),
    ("word-model", "equal-sign pair never orientable", check_same_sign_never_orientable),
    ("word-model", "quantum isomorphism is an equivalence relation", check_iso_equivalence),
    ("symbol-curves", "numeric windings match combinatorial", check_windings_match),
    ("symbol-curves", "curve samples lie on the earring", check_curve_on_earring),
    ("symbol-curves", "winding additive under curve products", check_winding_additivity),
    ("symbol-curves", "winding stable under sample doubling", check_sample_doubling),
    ("operator-models", "Bott projection idempotent and Hermitian", check_bott_projection),
    ("operator-models", "isometry column V*V = I", check_isometry_column),
    ("operator-models", "Fredholm index of u^k is -k", check_index_law),
    ("operator-models", "pairs wind twice; crosscap block index -2", check_pair_windings_and_block_index),
    ("operator-models", "circulant blocks unitary, spectrum on circles", check_circulant_spectrum),
    ("operator-models", "Bergman weights increase to 1", check_bergman_weights),
    ("operator-models", "K1 generator block lists distinct and sparse", check_k1_block_lists),
    ("k-theory", "K-groups match the closed-form table", check_ktable),
    ("k-theory", "kernel/cokernel rank duality and torsion", check_rank_duality),
    ("k-theory", "K1 symbol classes lie in ker(ind)", check_symbol_classes_in_kernel),
    ("k-theory", "index vector equals numeric windings", check_index_vs_windings),
    ("k-theory", "isomorphic words share K-groups", check_iso_implies_kgroups),
    ("k-theory", "K-groups equal classical surface table", check_classical_table),
    ("k-theory", "Smith reduction agrees with brute force", check_snf_oracle),
)


def run_all(cfg: VerifyConfig) -> list[CheckResult]:
    results = []
    for module, name, fn in CHECKS:
        passed, detail = fn(cfg)
        results.append(CheckResult(module, name, passed, detail))
    return results
