from fractions import Fraction

import pytest

from nokstring.linalg import det, nullspace, primitive, rank, solve, solve_consistent
from nokstring.rootdata import (
    CapabilityError,
    NotReducedError,
    RootSystemSpec,
    act_weight,
    brute_force_longest_words,
    default_word,
    dominant_weights,
    element_length,
    is_reduced,
    longest_element,
    longest_element_words,
    suffix_elements,
    weyl_dim,
    weyl_orbit,
    word_element,
)


def test_linalg_basics():
    assert det([[2, 1], [1, 1]]) == 1
    assert rank([[1, 2], [2, 4]]) == 1
    assert solve([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]
    assert solve_consistent([[1, 1], [2, 2]], [1, 3]) is None
    ns = nullspace([[1, 1, 0]], 3)
    assert len(ns) == 2
    assert primitive([Fraction(1, 2), Fraction(-1, 3)]) == [3, -2]


@pytest.mark.parametrize(
    "label, cartan",
    [
        ("A1", [[2]]),
        ("A2", [[2, -1], [-1, 2]]),
        ("C2", [[2, -2], [-1, 2]]),
    ],
)
def test_cartan_matrices(label, cartan):
    spec = RootSystemSpec(label[0], int(label[1]))
    assert spec.cartan_matrix == cartan


def test_unsupported_family():
    with pytest.raises(CapabilityError):
        RootSystemSpec("B", 2)
    with pytest.raises(CapabilityError):
        RootSystemSpec("A", 7)


@pytest.mark.parametrize("label, n", [("A1", 1), ("A2", 2), ("A3", 16), ("C2", 2)])
def test_reduced_word_counts(label, n):
    spec = RootSystemSpec(label[0], int(label[1]))
    words = longest_element_words(spec)
    assert len(words) == n
    assert set(words) == set(brute_force_longest_words(spec))
    assert all(len(w) == spec.num_positive_roots for w in words)


def test_a2_words(A2):
    assert set(longest_element_words(A2)) == {(1, 2, 1), (2, 1, 2)}
    assert default_word(A2) == (1, 2, 1)


def test_reducedness(A2, C2):
    assert is_reduced(A2, (1, 2, 1))
    assert not is_reduced(A2, (1, 1))
    assert is_reduced(C2, (2, 1, 2, 1))
    assert word_element(A2, (1, 2, 1)) == longest_element(A2)
    assert element_length(A2, longest_element(A2)) == 3


def test_suffix_elements(A2):
    ws = suffix_elements(A2, (1, 2, 1))
    assert len(ws) == 4
    assert ws[0] == (1, 2, 1) and ws[-1] == ()
    assert [element_length(A2, word_element(A2, w)) for w in ws] == [3, 2, 1, 0]
    with pytest.raises(NotReducedError):
        suffix_elements(A2, (1, 1, 2))


@pytest.mark.parametrize(
    "label, lam, dim",
    [
        ("A1", (2,), 3),
        ("A2", (1, 0), 3),
        ("A2", (1, 1), 8),
        ("A2", (2, 0), 6),
        ("A2", (3, 0), 10),
        ("A3", (1, 0, 1), 15),
        ("C2", (1, 0), 4),
        ("C2", (0, 1), 5),
        ("C2", (1, 1), 16),
    ],
)
def test_weyl_dim(label, lam, dim):
    assert weyl_dim(RootSystemSpec(label[0], int(label[1])), lam) == dim


def test_weyl_dim_a2_cube(A2):
    assert [weyl_dim(A2, (k, k)) for k in range(5)] == [(k + 1) ** 3 for k in range(5)]


def test_orbits_and_action(A2):
    assert len(weyl_orbit(A2, (1, 0))) == 3
    assert len(weyl_orbit(A2, (1, 1))) == 6
    assert act_weight(A2, (1, 2, 1), (1, 0)) == (0, -1)


def test_dominant_weights(A2):
    assert sorted(dominant_weights(A2, 1)) == [(0, 0), (0, 1), (1, 0)]
    assert len(dominant_weights(A2, 3)) == 10


def test_spec_json_round_trip(C2):
    assert RootSystemSpec.from_json(C2.to_json()) == C2
