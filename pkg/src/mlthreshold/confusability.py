"""Confusability counts nu_t(w).

nu_t(w) is the number of words x with w(x) <= t that are at least as close
to a fixed weight-w word c as to 0 (ties count).  Split the coordinates of
x by type:

  alpha  positions in supp(c) where x is 0
  beta   positions in supp(c) where x is non-zero but differs from c
  gamma  positions outside supp(c) where x is non-zero

Then w(x) = w - alpha + gamma and d(x, c) = alpha + beta + gamma, and the two
conditions become the linear system below.
"""

from dataclasses import dataclass
from functools import lru_cache

import gmpy2
import numpy as np
from gmpy2 import mpz

from .exactmath import comb_mpz

NU_BRUTEFORCE_BUDGET = 1 << 22


@dataclass(frozen=True)
class SystemS:
    """The nine inequalities over (alpha, beta, gamma) for weight w, radius t."""
    w: int
    t: int
    n: int

    # rows (a, b, c) of a*alpha + b*beta + c*gamma <= rhs, in this order
    COEFFS = (
        (-1, 0, 0),   # alpha >= 0
        (1, 0, 0),    # alpha <= w
        (0, -1, 0),   # beta >= 0
        (0, 1, 0),    # beta <= w
        (0, 0, -1),   # gamma >= 0
        (0, 0, 1),    # gamma <= n - w
        (-1, 0, 1),   # gamma <= t + alpha - w
        (0, 1, 1),    # beta + gamma <= t
        (2, 1, 0),    # 2 alpha + beta <= w
    )

    def rhs(self):
        w, t, n = self.w, self.t, self.n
        return (0, w, 0, w, 0, n - w, t - w, t, w)

    def constraints(self):
        return list(zip(self.COEFFS, self.rhs()))

    def satisfied(self, alpha, beta, gamma, skip=()):
        for i, ((a, b, c), r) in enumerate(zip(self.COEFFS, self.rhs())):
            if i not in skip and a * alpha + b * beta + c * gamma > r:
                return False
        return True


def feasible_cells(s, skip=()):
    """Integer points of the system, lexicographic in (alpha, beta, gamma).

    ``skip`` lists constraint indices to drop (used to probe redundancy).
    """
    out = []
    # the box constraints bound the search even when some rows are skipped
    for alpha in range(s.w + 1):
        for beta in range(s.w + 1):
            for gamma in range(max(s.n - s.w, 0) + 1):
                if s.satisfied(alpha, beta, gamma, skip):
                    out.append((alpha, beta, gamma))
    return out


def cell_term(q, n, w, alpha, beta, gamma):
    """Number of words realising one (alpha, beta, gamma) pattern."""
    return (comb_mpz(w, alpha + beta) * comb_mpz(alpha + beta, beta) * mpz(q - 2) ** beta
            * comb_mpz(n - w, gamma) * mpz(q - 1) ** gamma)


def nu_by_cells(q, n, w, t):
    """nu_t(w) as the literal sum over the feasible cells of the system."""
    return int(sum((cell_term(q, n, w, *c) for c in feasible_cells(SystemS(w, t, n))), mpz(0)))


class ConfusabilityTable:
    """Fast nu_t(w) for one (q, n), reusing power tables across calls.

    Using C(w, a+b) C(a+b, b) = C(w, a) C(w-a, b), the beta-sum at fixed alpha
    is the partial binomial sum G(w-a, w-2a) with G(m, b) = sum_{j<=b} C(m, j) r^j,
    r = q - 2.  Stepping alpha by one maps G(m, b) to G(m-1, b-2) through

        G(m-1, b) = (G(m, b) + r^(b+1) C(m-1, b)) / (r + 1)

    followed by removing the two top terms.  The gamma-sum is a prefix sum of
    C(n-w, g) (q-1)^g.  Once alpha >= n - t the gamma range is complete, so the
    tail over alpha collapses to a cached per-w total.
    """

    def __init__(self, q, n):
        if q < 2:
            raise ValueError(f"alphabet size must be >= 2, got {q}")
        self.q, self.n = q, n
        self._qm1 = mpz(q - 1)
        r = mpz(q - 2)
        self._r_pow = [mpz(1)]
        self._qm1_pow = [mpz(1)]
        for _ in range(n + 1):
            self._r_pow.append(self._r_pow[-1] * r)
            self._qm1_pow.append(self._qm1_pow[-1] * self._qm1)
        self._prefix = {}
        self._total = {}

    def gamma_prefix(self, w):
        if w not in self._prefix:
            m = self.n - w
            acc = mpz(0)
            out = []
            for g in range(m + 1):
                acc += comb_mpz(m, g) * self._qm1_pow[g]
                out.append(acc)
            self._prefix[w] = out
        return self._prefix[w]

    def alpha_terms(self, w, stop=None):
        """Yield C(w, a) G(w-a, w-2a) for a = 0 .. min(stop, w//2 + 1) - 1."""
        last = w // 2 + 1 if stop is None else min(stop, w // 2 + 1)
        rp, qm1 = self._r_pow, self._qm1
        m = b = w
        G = self._qm1_pow[w]
        for a in range(last):
            if a:
                Gb = gmpy2.divexact(G + rp[b + 1] * comb_mpz(m - 1, b), qm1)
                m -= 1
                G = Gb - comb_mpz(m, b) * rp[b] - comb_mpz(m, b - 1) * rp[b - 1]
                b -= 2
            yield comb_mpz(w, a) * G

    def alpha_total(self, w):
        if w not in self._total:
            self._total[w] = sum(self.alpha_terms(w), mpz(0))
        return self._total[w]

    def nu(self, w, t):
        n = self.n
        if not 0 <= w <= n or not 0 <= t <= n:
            raise ValueError(f"need 0 <= w, t <= n; got w={w}, t={t}, n={n}")
        if 2 * t < w:
            return mpz(0)
        F = self.gamma_prefix(w)
        a_lo = w - t
        a_full = n - t
        tot = mpz(0)
        head = mpz(0)
        for a, h in enumerate(self.alpha_terms(w, stop=a_full)):
            head += h
            if a >= a_lo:
                tot += h * F[t + a - w]
        if a_full <= w // 2:
            tot += F[n - w] * (self.alpha_total(w) - head)
        return tot


@lru_cache(maxsize=8)
def table(q, n):
    return ConfusabilityTable(q, n)


def nu(q, n, w, t):
    """nu_t(w) for words of length n over an alphabet of size q."""
    return int(table(q, n).nu(w, t))


def _word_grid(q, n, budget):
    if q ** n > budget:
        raise ValueError(f"space of size {q}^{n} exceeds brute-force budget {budget}")
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.indices((q,) * n, dtype=np.int8).reshape(n, -1).T


def nu_bruteforce_row(q, n, w, budget=NU_BRUTEFORCE_BUDGET):
    """[nu_t(w) for t = 0..n] by enumerating every word against c = 1^w 0^(n-w)."""
    words = _word_grid(q, n, budget)
    c = np.zeros(n, dtype=np.int8)
    c[:w] = 1
    wt = (words != 0).sum(axis=1)
    dc = (words != c).sum(axis=1)
    per_weight = np.bincount(wt[dc <= wt], minlength=n + 1)
    return [int(v) for v in np.cumsum(per_weight)]


def nu_bruteforce(q, n, w, t, budget=NU_BRUTEFORCE_BUDGET):
    if not 0 <= w <= n or not 0 <= t <= n:
        raise ValueError(f"need 0 <= w, t <= n; got w={w}, t={t}, n={n}")
    return nu_bruteforce_row(q, n, w, budget)[t]
