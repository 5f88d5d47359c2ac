import pytest

from qsurf.verification import (
    family_words,
    random_paired_word,
    random_single_vertex_words,
)

__all__ = ["family_words", "random_paired_word", "random_single_vertex_words"]


@pytest.fixture(scope="session")
def corpus200():
    return random_single_vertex_words(seed=20260810, count=200)
