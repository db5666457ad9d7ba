"""Ground truth on small Reed-Solomon codes over prime fields.

Everything here is exhaustive or simulated, and is meant to check the closed
forms elsewhere in the package.  Words are numpy int8 rows; the enumeration
order of F_q^n is lexicographic with the first coordinate most significant,
so a word's index is its base-q value.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from . import hamming_space
from .gaussian import BoundCurveSpec, theorem2_bound
from .hamming_space import MeasurePolynomial

MAX_FIELD = 13
CODEBOOK_BUDGET = 1 << 20
SPACE_BUDGET = 1 << 20
BLOCK_SIZE = 10_000
RNG_ALGORITHM = "numpy-PCG64/SeedSequence(seed,spawn_key=(block,))"


def is_prime(q):
    if q < 2:
        return False
    return all(q % f for f in range(2, math.isqrt(q) + 1))


@dataclass(frozen=True, eq=False)
class SmallCode:
    q: int
    n: int
    k: int
    points: tuple
    codebook: np.ndarray     # (q^k, n), row i encodes the i-th coefficient vector

    @property
    def d(self):
        return self.n - self.k + 1

    def nonzero_codewords(self):
        return self.codebook[(self.codebook != 0).any(axis=1)]


def rs_build(q, n, k):
    """Reed-Solomon code: evaluations of all polynomials of degree < k at 0..n-1."""
    if not is_prime(q) or q > MAX_FIELD:
        raise ValueError(f"field size must be a prime <= {MAX_FIELD}, got {q}")
    if not 1 <= k <= n <= q:
        raise ValueError(f"need 1 <= k <= n <= q, got n={n}, k={k}, q={q}")
    if q ** k > CODEBOOK_BUDGET:
        raise ValueError(f"codebook of size {q}^{k} exceeds budget {CODEBOOK_BUDGET}")
    points = tuple(range(n))
    coeffs = np.indices((q,) * k).reshape(k, -1).T.astype(np.int64)
    vander = np.array([[pow(x, i, q) for x in points] for i in range(k)], dtype=np.int64)
    codebook = (coeffs @ vander % q).astype(np.int8)
    return SmallCode(q, n, k, points, codebook)


def codebook_weight_distribution(code):
    wt = (code.codebook != 0).sum(axis=1)
    return [int(v) for v in np.bincount(wt, minlength=code.n + 1)]


def minimum_distance(code):
    """Smallest nonzero codeword weight (distance, by linearity)."""
    nz = code.nonzero_codewords()
    return int((nz != 0).sum(axis=1).min()) if len(nz) else code.n + 1


def all_words(q, n):
    if q ** n > SPACE_BUDGET:
        raise ValueError(f"space of size {q}^{n} exceeds budget {SPACE_BUDGET}")
    return np.indices((q,) * n, dtype=np.int8).reshape(n, -1).T


def bad_region_mask(code):
    """(words, mask) with mask marking A_0: some nonzero codeword is as close as 0."""
    words = all_words(code.q, code.n)
    wt = (words != 0).sum(axis=1)
    mask = np.zeros(len(words), dtype=bool)
    for c in code.nonzero_codewords():
        mask |= (words != c).sum(axis=1) <= wt
    return words, mask


def bad_region(code):
    words, mask = bad_region_mask(code)
    return frozenset(map(tuple, words[mask].tolist()))


def bad_region_is_increasing(code):
    """Whether A_0 is closed under support inclusion for this code."""
    words, mask = bad_region_mask(code)
    return hamming_space.is_increasing(code.q, code.n, map(tuple, words[mask].tolist()))


def exact_pe(code, require_increasing=False):
    """mu_p(A_0), the ML error probability when 0 is sent, as an exact polynomial.

    With ``require_increasing`` a non-increasing A_0 raises instead of being
    measured; the measure itself is well defined either way.
    """
    words, mask = bad_region_mask(code)
    if require_increasing and not hamming_space.is_increasing(
            code.q, code.n, map(tuple, words[mask].tolist())):
        raise ValueError(f"A_0 of RS({code.q},{code.n},{code.k}) is not increasing")
    wt = (words != 0).sum(axis=1)
    layers = np.bincount(wt[mask], minlength=code.n + 1)
    return MeasurePolynomial.from_layers(code.q, code.n, [int(v) for v in layers])


def bad_region_boundary(code):
    """h_{A_0}(x) for every x in A_0 (numpy array, same order as the mask)."""
    q, n = code.q, code.n
    words, mask = bad_region_mask(code)
    idx = np.arange(len(words), dtype=np.int64)
    h = np.zeros(len(words), dtype=np.int64)
    for i in range(n):
        place = q ** (n - 1 - i)
        xi = words[:, i].astype(np.int64)
        for s in range(1, q):
            nb = idx + ((xi + s) % q - xi) * place
            h += ~mask[nb]
    return h[mask]


def boundary_gap_holds(code):
    """Every x in A_0 has h = 0 or h >= ceil(d/2)."""
    h = bad_region_boundary(code)
    need = (code.d + 1) // 2
    return bool(((h == 0) | (h >= need)).all())


def transmit(x, p, rng, q):
    """q-ary symmetric channel: each symbol replaced w.p. p by a uniform other symbol."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    x = np.asarray(x, dtype=np.int64)
    flip = rng.random(x.shape) < p
    shift = rng.integers(1, q, size=x.shape)
    return np.where(flip, (x + shift) % q, x)


def ml_decode(y, code):
    """A nearest codeword; ties go to the lowest codebook index."""
    dist = (code.codebook != np.asarray(y)).sum(axis=1)
    return code.codebook[int(np.argmin(dist))]


def decoding_error(y, sent, code):
    """True iff some codeword other than ``sent`` is at least as close to y."""
    y, sent = np.asarray(y), np.asarray(sent)
    dist = (code.codebook != y).sum(axis=1)
    others = (code.codebook != sent).any(axis=1)
    return bool((dist[others] <= (y != sent).sum()).any())


@dataclass(frozen=True)
class SimulationReport:
    p: float
    trials: int
    errors: int
    p_e_hat: float
    half_width_3sigma: float
    seed: int
    rng: str = RNG_ALGORITHM
    block_size: int = BLOCK_SIZE


def _block_rng(seed, block):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _count_block(args):
    nz, q, n, p, seed, block, size = args
    rng = _block_rng(seed, block)
    y = transmit(np.zeros((size, n), dtype=np.int64), p, rng, q)
    wt = (y != 0).sum(axis=1)
    err = np.zeros(size, dtype=bool)
    for c in nz:
        err |= (y != c).sum(axis=1) <= wt
    return int(err.sum())


def estimate_pe(code, p, trials, seed, jobs=1):
    """Monte-Carlo ML error rate sending 0.

    Trials are cut into fixed blocks, each with its own stream derived from
    (seed, block index), so the result depends on the seed only and not on
    how many workers run the blocks.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    nz = code.nonzero_codewords().astype(np.int64)
    tasks = []
    for block, start in enumerate(range(0, trials, BLOCK_SIZE)):
        tasks.append((nz, code.q, code.n, p, seed, block, min(BLOCK_SIZE, trials - start)))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            errors = sum(pool.map(_count_block, tasks))
    else:
        errors = sum(map(_count_block, tasks))
    phat = errors / trials
    return SimulationReport(p, trials, errors, phat, 3.0 * math.sqrt(phat * (1.0 - phat) / trials), seed)


def half_root(poly, tol=Fraction(1, 10 ** 12)):
    """p in (0, 1) with poly(p) = 1/2, by exact bisection (poly increasing through 1/2)."""
    lo, hi = Fraction(0), Fraction(1)
    if not poly(lo) < Fraction(1, 2) <= poly(hi):
        raise ValueError("polynomial does not cross 1/2 on [0, 1]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if poly(mid) < Fraction(1, 2):
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


@dataclass(frozen=True)
class BracketReport:
    p_c: float
    d: int
    min_slack_below: float
    min_slack_above: float
    grid: int

    @property
    def holds(self):
        return self.min_slack_below >= 0.0 and self.min_slack_above >= 0.0


def theorem2_bracketing(code, grid=100, root_tol=1e-9):
    """Slack of the sharp-threshold bound against the exact error polynomial.

    Below p_c the bound must sit above P_e, above p_c below it.  A grid point
    within ``root_tol`` of the computed p_c may fall on either side.
    """
    poly = exact_pe(code)
    pc = half_root(poly)
    spec = BoundCurveSpec(code.d, pc)
    below, above = math.inf, math.inf
    for i in range(1, grid):
        p = i / grid
        gap = theorem2_bound(p, spec) - float(poly(Fraction(i, grid)))
        if abs(p - pc) <= root_tol:
            gap = abs(gap)
            below, above = min(below, gap), min(above, gap)
        elif p < pc:
            below = min(below, gap)
        else:
            above = min(above, -gap)
    return BracketReport(pc, code.d, below, above, grid)
