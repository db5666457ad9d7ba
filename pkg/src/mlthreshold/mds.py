"""MDS code parameters and their exact weight distribution."""

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpz

from .exactmath import comb_mpz


@dataclass(frozen=True)
class CodeParams:
    q: int
    n: int
    k: int
    d: int

    @property
    def delta(self):
        return Fraction(self.d, self.n)


def validate(q, n, k, d=None):
    """Build CodeParams with the Singleton-equality distance d = n - k + 1."""
    q, n, k = int(q), int(n), int(k)
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    if n < 1:
        raise ValueError(f"length must be >= 1, got {n}")
    if not 1 <= k <= n:
        raise ValueError(f"dimension k={k} outside [1, {n}]")
    # MDS means d = n - k + 1; the relation is sometimes misprinted as k + d = n - 1
    mds_d = n - k + 1
    if d is not None and int(d) != mds_d:
        raise ValueError(f"d={d} violates the MDS relation d = n - k + 1 = {mds_d}")
    return CodeParams(q, n, k, mds_d)


def _enumerator_mpz(q, n, d, l):
    if l == 0:
        return mpz(1)
    if l < d:
        return mpz(0)
    q = mpz(q)
    s = mpz(0)
    for j in range(l - d + 1):
        term = comb_mpz(l, j) * (q ** (1 + l - d - j) - 1)
        s += -term if j & 1 else term
    return comb_mpz(n, l) * s


def weight_enumerator(params, l):
    """A_l, the number of codewords of weight exactly l."""
    if not 0 <= l <= params.n:
        raise ValueError(f"weight {l} outside [0, {params.n}]")
    return int(_enumerator_mpz(params.q, params.n, params.d, l))


def weight_distribution(params):
    """[A_0, ..., A_n]."""
    return [int(_enumerator_mpz(params.q, params.n, params.d, l)) for l in range(params.n + 1)]
