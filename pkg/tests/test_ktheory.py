import itertools

import pytest

from qsurf.errors import UnsupportedWordError
from qsurf.ktheory import (
    TORSION_RELATION,
    UNIVERSAL_RELATION,
    AbelianGroup,
    index_map,
    k0_generator_presentation,
    k1_generator_presentation,
    kgroups,
    kgroups_json,
    normal_form_index_map,
)
from qsurf.operators import block_label
from qsurf.words import classify, is_isomorphic, pair_structure, parse_word, standard_word
from conftest import family_words, random_single_vertex_words


def kg(text):
    return kgroups(classify(parse_word(text)))


def classical_kgroups(cls):
    """Topological K-theory of the classical surfaces, hard-coded."""
    from qsurf.words import SurfaceKind

    if cls.kind is SurfaceKind.SPHERE:
        return AbelianGroup(2), AbelianGroup(0)
    if cls.kind is SurfaceKind.ORIENTABLE:
        return AbelianGroup(2), AbelianGroup(2 * cls.genus)
    return AbelianGroup(1, (2,)), AbelianGroup(cls.euler_genus - 1)


class TestAbelianGroup:
    def test_str(self):
        assert str(AbelianGroup(0)) == "0"
        assert str(AbelianGroup(2)) == "Z^2"
        assert str(AbelianGroup(1, (2,))) == "Z_2 + Z"

    def test_divisibility_enforced(self):
        with pytest.raises(ValueError):
            AbelianGroup(0, (4, 2))
        with pytest.raises(ValueError):
            AbelianGroup(0, (1,))


class TestIndexMap:
    def test_mixed_word(self):
        assert index_map(pair_structure(parse_word("abaB"))).vector == (2, 0)

    def test_torus(self):
        assert index_map(pair_structure(parse_word("abAB"))).vector == (0, 0)

    def test_three_pairs(self):
        # a and b same-orientation, c opposite; single-vertex arrangement
        assert index_map(pair_structure(parse_word("aabcbC"))).vector == (2, 2, 0)

    def test_unsupported(self):
        with pytest.raises(UnsupportedWordError):
            index_map(pair_structure(parse_word("abab")))

    def test_normal_form(self):
        nf = normal_form_index_map(classify(parse_word("abaB")))
        assert nf.vector == (2, 0)
        assert nf.rank == 1
        assert nf.apply((0, 5)) == 0


class TestKGroups:
    def test_torus(self):
        g = kg("abAB")
        assert g.k0 == AbelianGroup(2)
        assert g.k1 == AbelianGroup(2)

    def test_projective_plane(self):
        g = kg("aa")
        assert g.k0 == AbelianGroup(1, (2,))
        assert g.k1 == AbelianGroup(0)

    def test_n3_k1(self):
        g = kgroups(classify(standard_word(3, 1)))
        assert g.k0 == AbelianGroup(1, (2,))
        assert g.k1 == AbelianGroup(2)

    def test_sphere(self):
        g = kg("aA")
        assert g.k0 == AbelianGroup(2)
        assert g.k1 == AbelianGroup(0)

    def test_unsupported(self):
        with pytest.raises(UnsupportedWordError):
            kg("abab")

    def test_closed_form_table(self):
        for name, word in family_words().items():
            cls = classify(word)
            g = kgroups(cls)
            assert (g.k0, g.k1) == classical_kgroups(cls), name

    def test_rank_duality_and_torsion(self):
        import math

        for w in random_single_vertex_words(seed=31, count=40):
            cls = classify(w)
            g = kgroups(cls)
            ind = normal_form_index_map(cls)
            assert g.k1.free_rank + ind.rank == cls.N
            gcd = math.gcd(*ind.vector) if any(ind.vector) else 0
            assert g.k0.torsion == ((gcd,) if gcd >= 2 else ())

    def test_iso_words_same_kgroups(self):
        words = random_single_vertex_words(seed=37, count=30)
        for a, b in itertools.combinations(words, 2):
            if is_isomorphic(a, b):
                assert kgroups(classify(a)) == kgroups(classify(b))


class TestK0Presentation:
    def test_torsion_relation_iff_nonorientable(self):
        assert k0_generator_presentation(classify(parse_word("aa"))).has_torsion_relation
        assert not k0_generator_presentation(classify(parse_word("abAB"))).has_torsion_relation
        assert not k0_generator_presentation(classify(parse_word("aA"))).has_torsion_relation

    def test_universal_relation_always(self):
        for text in ["aa", "abAB", "aA", "aabb"]:
            pres = k0_generator_presentation(classify(parse_word(text)))
            assert UNIVERSAL_RELATION in pres.relations
            assert pres.generators == ("[1]", "[P_Bott]")

    def test_klein_bottle_relation_text(self):
        pres = k0_generator_presentation(classify(parse_word("abaB")))
        assert TORSION_RELATION in pres.relations


class TestK1Presentation:
    def test_torus_generators(self):
        gens = k1_generator_presentation(classify(parse_word("abAB")))
        assert [g.label for g in gens] == ["U_1", "U_2"]
        assert [block_label(b) for b in gens[0].blocks] == ["2 U - 1", "Id"]
        assert [block_label(b) for b in gens[1].blocks] == ["Id", "3/2 U - 1/2"]
        assert gens[0].symbol_class == (1, 0)

    def test_projective_plane_empty(self):
        assert k1_generator_presentation(classify(parse_word("aa"))) == ()

    def test_sphere_empty(self):
        assert k1_generator_presentation(classify(parse_word("aA"))) == ()

    def test_klein_bottle_class(self):
        gens = k1_generator_presentation(classify(parse_word("aabb")))
        assert len(gens) == 1
        assert gens[0].symbol_class == (-1, 1)
        assert [block_label(b) for b in gens[0].blocks] == ["2 S*^2 - 1", "3/2 S^2 - 1/2"]

    def test_classes_lie_in_kernel(self):
        for N in range(1, 6):
            for k in range(0, N + 1):
                if k == 0 and N % 2:
                    continue
                cls = classify(standard_word(N, k))
                ind = normal_form_index_map(cls)
                for gen in k1_generator_presentation(cls):
                    assert ind.apply(gen.symbol_class) == 0, (N, k, gen.label)

    def test_generator_count_matches_k1_rank(self):
        for w in random_single_vertex_words(seed=43, count=30):
            cls = classify(w)
            g = kgroups(cls)
            assert len(g.k1_generators) == g.k1.free_rank


class TestJson:
    def test_schema(self):
        data = kgroups_json(kg("aabb"))
        assert set(data) == {"k0", "k1", "k0_relations", "k1_generators"}
        assert data["k0"] == {"free_rank": 1, "torsion": [2]}
        assert data["k1"] == {"free_rank": 1, "torsion": []}
        assert TORSION_RELATION in data["k0_relations"]
        gen = data["k1_generators"][0]
        assert set(gen) == {"label", "blocks", "symbol_class"}
        assert gen["symbol_class"] == [-1, 1]

    def test_sphere_schema(self):
        data = kgroups_json(kg("aA"))
        assert data["k1_generators"] == []
        assert data["k0"]["free_rank"] == 2
