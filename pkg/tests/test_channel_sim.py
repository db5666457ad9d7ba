from fractions import Fraction
import itertools

import numpy as np
import pytest

from mlthreshold.channel_sim import (
    all_words, bad_region, bad_region_boundary, bad_region_is_increasing, boundary_gap_holds,
    codebook_weight_distribution, decoding_error, estimate_pe, exact_pe, half_root, is_prime,
    minimum_distance, ml_decode, rs_build, theorem2_bracketing, transmit,
)
from mlthreshold.hamming_space import MeasurePolynomial
from mlthreshold.mds import validate, weight_distribution

from .oracles import misdecoded_counts


def test_is_prime():
    assert [q for q in range(15) if is_prime(q)] == [2, 3, 5, 7, 11, 13]


def test_rs_build_small():
    code = rs_build(3, 2, 1)
    assert sorted(map(tuple, code.codebook.tolist())) == [(0, 0), (1, 1), (2, 2)]
    assert code.d == 2 and minimum_distance(code) == 2


@pytest.mark.parametrize("q,n,k", [(5, 4, 2), (5, 5, 2), (7, 6, 2), (7, 7, 3), (11, 8, 3)])
def test_rs_is_mds(q, n, k):
    code = rs_build(q, n, k)
    assert len(code.codebook) == q ** k
    assert len(set(map(tuple, code.codebook.tolist()))) == q ** k
    assert minimum_distance(code) == n - k + 1
    assert codebook_weight_distribution(code) == weight_distribution(validate(q, n, k))


@pytest.mark.parametrize("q,n,k", [(4, 3, 1), (17, 4, 2), (5, 6, 2), (5, 4, 0), (13, 13, 7)])
def test_rs_build_rejects(q, n, k):
    with pytest.raises(ValueError):
        rs_build(q, n, k)


def test_exact_pe_small():
    # repetition code {00, 11, 22}: ties count, so every non-zero word is in A_0
    code = rs_build(3, 2, 1)
    assert bad_region(code) == frozenset(w for w in itertools.product(range(3), repeat=2) if any(w))
    assert exact_pe(code) == MeasurePolynomial([0, 2, -1])
    assert half_root(exact_pe(code)) == pytest.approx(1 - 2 ** -0.5, abs=1e-12)


def test_exact_pe_matches_layer_count():
    for q, n, k in [(5, 4, 2), (7, 6, 2), (5, 5, 1)]:
        code = rs_build(q, n, k)
        cum = misdecoded_counts(code)
        layers = [cum[0]] + [b - a for a, b in zip(cum, cum[1:])]
        assert exact_pe(code) == MeasurePolynomial.from_layers(q, n, layers)


def test_exact_pe_endpoints_and_monotone():
    code = rs_build(5, 4, 2)
    poly = exact_pe(code)
    assert poly(Fraction(0)) == 0
    vals = [poly(Fraction(i, 50)) for i in range(51)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_increasing_region_cases():
    for q, n, k in [(3, 2, 1), (5, 4, 2), (7, 7, 3), (7, 5, 3)]:
        code = rs_build(q, n, k)
        assert bad_region_is_increasing(code)
        assert boundary_gap_holds(code)
        exact_pe(code, require_increasing=True)
    for q, n, k in [(7, 6, 2), (5, 5, 2), (5, 4, 1)]:
        code = rs_build(q, n, k)
        assert not bad_region_is_increasing(code)
        with pytest.raises(ValueError):
            exact_pe(code, require_increasing=True)


def test_boundary_matches_direct_count():
    code = rs_build(5, 4, 2)
    region = bad_region(code)
    words = all_words(5, 4)
    inside = [tuple(w) for w in words.tolist() if tuple(w) in region]
    direct = []
    for x in inside:
        h = 0
        for i in range(4):
            for s in range(5):
                if s != x[i] and x[:i] + (s,) + x[i + 1:] not in region:
                    h += 1
        direct.append(h)
    assert bad_region_boundary(code).tolist() == direct


def test_transmit_statistics():
    rng = np.random.default_rng(1)
    x = np.zeros((20000, 5), dtype=np.int64)
    assert (transmit(x, 0.0, rng, 7) == 0).all()
    assert (transmit(x, 1.0, rng, 7) != 0).all()
    y = transmit(x, 0.3, rng, 7)
    assert abs((y != 0).mean() - 0.3) < 0.01
    counts = np.bincount(y[y != 0], minlength=7)[1:]
    assert counts.min() > 0.9 * counts.mean()
    with pytest.raises(ValueError):
        transmit(x, 1.5, rng, 7)


def test_decoding():
    code = rs_build(5, 4, 2)
    c = code.codebook[7]
    assert (ml_decode(c, code) == c).all()
    assert not decoding_error(c, c, code)
    zero = np.zeros(4, dtype=np.int8)
    region = bad_region(code)
    for y in all_words(5, 4)[::13]:
        assert decoding_error(y, zero, code) == (tuple(y.tolist()) in region)


def test_estimate_pe_within_three_sigma():
    code = rs_build(5, 4, 2)
    poly = exact_pe(code)
    for p in (0.2, 0.6):
        rep = estimate_pe(code, p, 50_000, seed=3)
        assert abs(rep.p_e_hat - float(poly(Fraction(p).limit_denominator()))) <= rep.half_width_3sigma


def test_estimate_pe_reproducible_across_jobs():
    code = rs_build(5, 4, 2)
    a = estimate_pe(code, 0.4, 30_000, seed=11, jobs=1)
    b = estimate_pe(code, 0.4, 30_000, seed=11, jobs=3)
    assert a == b
    assert estimate_pe(code, 0.4, 30_000, seed=12).errors != a.errors
    with pytest.raises(ValueError):
        estimate_pe(code, 0.4, 0, seed=1)


def test_bracketing_small_codes():
    for (q, n, k), pc in [((3, 2, 1), 0.29289), ((5, 4, 2), 0.38573), ((7, 6, 2), 0.43096)]:
        rep = theorem2_bracketing(rs_build(q, n, k))
        assert rep.p_c == pytest.approx(pc, abs=1e-5)
        assert rep.holds


def test_half_root_rejects_non_crossing():
    with pytest.raises(ValueError):
        half_root(MeasurePolynomial([Fraction(1, 4)]))
