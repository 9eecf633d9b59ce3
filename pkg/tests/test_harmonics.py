import math

import pytest

from apkstats import harmonic_approx, harmonic_numbers, triangular_sums


def test_first_harmonic_numbers():
    assert harmonic_numbers(1) == (1.0, 1.0)


def test_harmonic_numbers_k3():
    h = harmonic_numbers(3)
    assert h.h1 == pytest.approx(11 / 6, abs=1e-15)
    assert h.h2 == pytest.approx(49 / 36, abs=1e-15)


def test_harmonic_numbers_k5():
    h = harmonic_numbers(5)
    assert h.h1 == pytest.approx(137 / 60, abs=1e-15)
    assert h.h2 == pytest.approx(5269 / 3600, abs=1e-15)


def test_harmonic_rejects_nonpositive_k():
    for fn in (harmonic_numbers, harmonic_approx, triangular_sums):
        with pytest.raises(ValueError):
            fn(0)


def test_large_k_pairwise_path_agrees_with_fsum():
    k = (1 << 20) + 11  # just past the fsum/numpy switchover
    via_numpy = harmonic_numbers(k)
    h1 = math.fsum(1.0 / i for i in range(k, 0, -1))
    h2 = math.fsum(1.0 / (i * i) for i in range(k, 0, -1))
    assert via_numpy.h1 == pytest.approx(h1, rel=1e-14)
    assert via_numpy.h2 == pytest.approx(h2, rel=1e-14)


def test_approx_overshoots_by_at_most_the_bound():
    for k in (1, 2, 3, 10, 100, 12345):
        approx, bound = harmonic_approx(k)
        err = approx - harmonic_numbers(k).h1
        assert 0.0 <= err <= bound


def test_approx_k1():
    approx, bound = harmonic_approx(1)
    assert approx == pytest.approx(1.0772, abs=1e-4)
    assert abs(approx - 1.0) <= 1 / 8 == bound


def test_approx_k100_gap():
    approx, _ = harmonic_approx(100)
    assert abs(approx - harmonic_numbers(100).h1) <= 1 / 80000


def test_bound_is_one_over_eight_k_squared():
    for k in (1, 7, 640):
        assert harmonic_approx(k)[1] == 1 / (8 * k * k)


def test_triangular_sums_k1_are_empty():
    assert triangular_sums(1) == (0.0, 0.0, 0.0)


def test_triangular_sums_k3_hand_values():
    s = triangular_sums(3)
    # pairs (1,2), (1,3), (2,3)
    assert s.s1 == pytest.approx(1 + 1 + 1 / 2, abs=1e-12)
    assert s.s2 == pytest.approx(1 / 2 + 1 / 3 + 1 / 3, abs=1e-12)
    assert s.s3 == pytest.approx(1 / 2 + 1 / 3 + 1 / 6, abs=1e-12)


def test_triangular_sums_match_direct_double_summation():
    for k in range(1, 40):
        pairs = [(i, l) for i in range(1, k) for l in range(i + 1, k + 1)]
        direct = (
            math.fsum(1.0 / i for i, _ in pairs),
            math.fsum(1.0 / l for _, l in pairs),
            math.fsum(1.0 / (i * l) for i, l in pairs),
        )
        closed = triangular_sums(k)
        for c, d in zip(closed, direct):
            assert c == pytest.approx(d, rel=1e-12, abs=1e-12)
