import pytest
from hypothesis import given
from hypothesis import strategies as st

from apkstats import Normalization, ap_at_k, map_at_k, precision_at

BY_K = Normalization.BY_K
BY_MIN = Normalization.BY_MIN_MK

binary_vectors = st.lists(st.integers(0, 1), min_size=1, max_size=64)


def test_precision_counts_prefix():
    assert precision_at([1, 0, 1], 3) == pytest.approx(2 / 3, abs=1e-12)


def test_precision_no_relevant_items():
    assert precision_at([0, 0, 0, 0], 4) == 0.0


def test_precision_all_relevant_prefix():
    assert precision_at([1, 1, 1], 2) == 1.0


def test_precision_rank_out_of_range():
    with pytest.raises(IndexError):
        precision_at([1, 0], 3)
    with pytest.raises(IndexError):
        precision_at([1, 0], 0)


def test_ap_hand_value_bymin():
    assert ap_at_k([1, 0, 1], 3, BY_MIN) == pytest.approx(5 / 6, abs=1e-12)


def test_ap_hand_value_byk():
    assert ap_at_k([1, 0, 1], 3, BY_K) == pytest.approx(5 / 9, abs=1e-12)


def test_ap_no_relevant_items_scores_zero():
    assert ap_at_k([0, 0, 0], 3, BY_K) == 0.0
    assert ap_at_k([0, 0, 0], 3, BY_MIN) == 0.0


def test_ap_all_relevant_scores_one():
    for k in (1, 3, 6):
        assert ap_at_k([1] * 6, k, BY_MIN) == 1.0


def test_ap_cutoff_beyond_length():
    with pytest.raises(ValueError):
        ap_at_k([1, 0], 3, BY_MIN)
    with pytest.raises(ValueError):
        ap_at_k([1, 0], 0, BY_MIN)


def test_ap_rejects_nonbinary_indicators():
    with pytest.raises(ValueError):
        ap_at_k([0, 2], 2, BY_MIN)
    with pytest.raises(ValueError):
        ap_at_k([], 1, BY_MIN)


def test_map_averages_users():
    users = [[1, 0, 1], [0, 0, 0]]
    assert map_at_k(users, 3, BY_MIN) == pytest.approx(5 / 12, abs=1e-12)


def test_map_of_single_user_is_their_ap():
    rel = [0, 1, 1, 0]
    assert map_at_k([rel], 3, BY_MIN) == ap_at_k(rel, 3, BY_MIN)


def test_map_of_identical_users_is_common_ap():
    rel = [1, 0, 1]
    assert map_at_k([rel] * 3, 3, BY_MIN) == ap_at_k(rel, 3, BY_MIN)


def test_map_rejects_empty_user_set():
    with pytest.raises(ValueError):
        map_at_k([], 3, BY_MIN)


def test_map_rejects_short_vectors():
    with pytest.raises(ValueError):
        map_at_k([[1, 0, 1], [1, 0]], 3, BY_MIN)


@given(binary_vectors, st.data())
def test_ap_stays_in_unit_interval(rel, data):
    k = data.draw(st.integers(1, len(rel)))
    for norm in (BY_K, BY_MIN):
        assert 0.0 <= ap_at_k(rel, k, norm) <= 1.0


@given(st.integers(1, 12), st.data())
def test_front_loaded_relevant_items_score_one(m, data):
    length = data.draw(st.integers(m, 24))
    k = data.draw(st.integers(1, length))
    rel = [1] * m + [0] * (length - m)
    assert ap_at_k(rel, k, BY_MIN) == 1.0


@given(binary_vectors, st.data())
def test_byk_is_bymin_scaled_by_min_over_k(rel, data):
    k = data.draw(st.integers(1, len(rel)))
    m = sum(rel)
    byk = ap_at_k(rel, k, BY_K)
    bymin = ap_at_k(rel, k, BY_MIN)
    expected = bymin * min(m, k) / k if m else 0.0
    assert byk == pytest.approx(expected, rel=1e-12, abs=1e-15)


@given(
    st.lists(st.lists(st.integers(0, 1), min_size=4, max_size=8), min_size=1, max_size=6),
    st.randoms(use_true_random=False),
)
def test_map_is_invariant_under_user_reordering(users, rnd):
    shuffled = list(users)
    rnd.shuffle(shuffled)
    assert map_at_k(users, 4, BY_MIN) == map_at_k(shuffled, 4, BY_MIN)
