from math import comb

import pytest

from mlthreshold.channel_sim import codebook_weight_distribution, rs_build
from mlthreshold.mds import validate, weight_distribution, weight_enumerator


def test_validate_examples():
    assert validate(2 ** 64, 2048, 256).d == 1793
    assert validate(5, 4, 2).d == 3
    assert validate(5, 4, 2, d=3).d == 3


@pytest.mark.parametrize("q,n,k,d", [(5, 4, 2, 2), (5, 4, 5, None), (1, 4, 2, None), (5, 4, 0, None)])
def test_validate_rejects(q, n, k, d):
    with pytest.raises(ValueError):
        validate(q, n, k, d)


def test_small_distributions():
    # brute force over the 25 and 3 codewords respectively
    assert weight_distribution(validate(5, 4, 2)) == [1, 0, 0, 16, 8]
    assert weight_distribution(validate(3, 2, 1)) == [1, 0, 2]


def test_enumerator_edges():
    p = validate(7, 6, 3)
    assert weight_enumerator(p, 0) == 1
    assert all(weight_enumerator(p, l) == 0 for l in range(1, p.d))
    with pytest.raises(ValueError):
        weight_enumerator(p, 7)


@pytest.mark.parametrize("q", [4, 2 ** 8, 2 ** 16])
def test_sum_is_code_size(q):
    for n in (1, 2, 5, 16, 33, 64):
        for k in range(1, n + 1):
            assert sum(weight_distribution(validate(q, n, k))) == q ** k


def test_nonnegative_and_minimum_weight():
    # nontrivial MDS codes need n <= q + 1
    for q in (3, 4, 7, 2 ** 8):
        for n in range(1, min(q + 1, 24) + 1):
            for k in range(1, n + 1):
                p = validate(q, n, k)
                dist = weight_distribution(p)
                assert min(dist) >= 0
                assert dist[p.d] == comb(n, p.d) * (q - 1)


def test_negative_outside_existence_range():
    # no [5, 2] MDS code over GF(3); the formula reports it with a negative count
    assert weight_distribution(validate(3, 5, 2)) == [1, 0, 0, 0, 10, -2]


def test_crude_upper_estimate():
    for q in (5, 2 ** 8, 2 ** 16):
        for n in range(1, 30):
            for k in range(1, n + 1):
                p = validate(q, n, k)
                for l in range(p.d, n + 1):
                    assert weight_enumerator(p, l) <= n * 2 ** (n + l) * q ** (1 + l - p.d)


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11])
def test_matches_reed_solomon_enumeration(q):
    for n in range(1, q + 1):
        for k in range(1, min(n, 3) + 1):
            if q ** k > 1 << 20:
                continue
            assert weight_distribution(validate(q, n, k)) == codebook_weight_distribution(rs_build(q, n, k))
