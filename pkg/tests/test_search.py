from fractions import Fraction
from statistics import mean

import pytest

from zchannel.search import (
    SearchBudget,
    best_list_code,
    max_code,
    sample_code_radius,
)
from zchannel.words import list_radius

from oracles import list_radius_by_enumeration


def test_max_code_tiny_cases():
    r = max_code(3, 4)
    assert r.objective == 2
    assert r.optimal
    assert r.code.min_dz() >= 4

    r = max_code(2, 2)
    assert r.objective == 4
    assert {str(x) for x in r.code} == {"00", "01", "10", "11"}


def test_max_code_distance_four_length_four():
    r = max_code(4, 4)
    assert r.optimal
    assert r.objective == 4
    assert [str(x) for x in r.code] == ["0000", "1100", "0011", "1111"]
    assert r.code.min_dz() == 4


def test_max_code_input_validation():
    with pytest.raises(ValueError):
        max_code(4, 3)  # odd distance can never be attained exactly
    with pytest.raises(ValueError):
        max_code(0, 2)


def test_max_code_respects_node_cap():
    r = max_code(8, 4, SearchBudget(max_nodes=10))
    assert not r.optimal
    assert r.note
    assert r.code.min_dz() is None or r.code.min_dz() >= 4


def test_best_list_single_list_size():
    r = best_list_code(4, 2, 3, 1)
    assert r.optimal
    assert r.objective == 0
    assert [str(x) for x in r.code] == ["1100", "1010", "0110"]
    assert list_radius(r.code, 1) == 0


def test_best_list_fixture_code():
    r = best_list_code(6, 3, 4, 2)
    assert r.optimal
    assert r.objective == 2
    assert [str(x) for x in r.code] == ["111000", "110100", "001011", "000111"]
    assert list_radius(r.code, 2) == 2


def test_best_list_agrees_with_enumeration_oracle():
    r = best_list_code(5, 2, 3, 1)
    masks = [x.mask for x in r.code]
    assert r.objective == list_radius_by_enumeration(masks, 5, 1)


def test_best_list_size_within_list_bound():
    r = best_list_code(5, 2, 2, 3)
    assert r.objective == 5
    assert r.note


def test_best_list_randomized_path_is_seeded():
    budget = SearchBudget(max_nodes=50, restarts=20, seed=99)
    a = best_list_code(7, 3, 4, 1, budget)
    b = best_list_code(7, 3, 4, 1, budget)
    assert not a.optimal
    assert [str(x) for x in a.code] == [str(x) for x in b.code]
    assert a.objective == b.objective
    # a different seed may find a different argmax but never a better-than
    # exhaustive objective
    exhaustive = best_list_code(7, 3, 4, 1)
    assert exhaustive.optimal
    assert a.objective <= exhaustive.objective


def test_sample_code_radius_exact_means():
    vals = sample_code_radius(32, 8, 0.5, 1, 1000, seed=0)
    assert len(vals) == 1000
    assert all(isinstance(v, Fraction) for v in vals)
    assert mean(vals) == Fraction(10287, 64000)

    again = sample_code_radius(32, 8, 0.5, 1, 1000, seed=0)
    assert vals == again

    other = sample_code_radius(32, 8, 0.5, 1, 1000, seed=2024)
    assert mean(other) == Fraction(10387, 64000)


def test_sample_code_radius_validation():
    with pytest.raises(ValueError):
        sample_code_radius(8, 2, 0.5, 2, 10, seed=1)
    with pytest.raises(ValueError):
        sample_code_radius(8, 4, 1.5, 1, 10, seed=1)


def test_sample_code_radius_degenerate_omega():
    # all-zero words: every subset meets at zero with zero gap
    vals = sample_code_radius(6, 3, 0.0, 1, 5, seed=3)
    assert vals == [Fraction(0)] * 5
    vals = sample_code_radius(6, 3, 1.0, 1, 5, seed=3)
    assert vals == [Fraction(0)] * 5
