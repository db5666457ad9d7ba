"""Exact estimator of the ML decoding error ratio g(p) and its 1/2-crossing.

On the grid p = t/n the estimator is

    g(t) <= sum_{l=d}^{min(n, 2t)} A_l nu_t(l) / |B(t)|

computed as an exact rational.  It counts (codeword, word) pairs, so it
over-counts words that are close to several codewords and can exceed 1.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
import os

from gmpy2 import mpz

from . import confusability
from .exactmath import ball_layers, from_decimal, ratio_to_float, to_decimal
from .mds import _enumerator_mpz

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class NoCrossingError(ValueError):
    """The estimator never crosses 1/2 on the requested radius range."""


@dataclass(frozen=True)
class ExactCurvePoint:
    t: int
    p: Fraction
    value: Fraction
    value_float: float


@dataclass
class ThresholdReport:
    q: int
    n: int
    k: int
    d: int
    bracket_low: Fraction
    bracket_high: Fraction
    t_cross: int
    slope: float
    search: str
    points: list = field(default_factory=list)
    monotone: bool = True
    violations: list = field(default_factory=list)
    fallback: bool = False


class Checkpoint:
    """Append-only log of finished numerator terms, one ``t,l,<decimal>`` per line.

    A leading ``# q=..,n=..,k=..`` line guards against resuming with other
    parameters.
    """

    def __init__(self, path, params):
        self.path = os.fspath(path)
        self.tag = f"# q={params.q},n={params.n},k={params.k}"
        self.terms = {}
        if os.path.exists(self.path):
            self._load()
        else:
            with open(self.path, "w") as fh:
                fh.write(self.tag + "\n")

    def _load(self):
        with open(self.path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    if line != self.tag:
                        raise ValueError(f"{self.path}: checkpoint is for {line[2:]}, not {self.tag[2:]}")
                    continue
                try:
                    t, l, val = line.split(",", 2)
                    self.terms[int(t), int(l)] = mpz(from_decimal(val))
                except ValueError:
                    # a torn final line from an interrupted run is dropped and recomputed
                    log.warning("%s:%d: ignoring unreadable checkpoint line", self.path, lineno)

    def get(self, t, l):
        return self.terms.get((t, l))

    def put(self, t, l, value):
        self.terms[t, l] = value
        with open(self.path, "a") as fh:
            fh.write(f"{t},{l},{to_decimal(value)}\n")
            fh.flush()


_worker = None


def _init_worker(q, n, d):
    global _worker
    _worker = (q, n, d, confusability.table(q, n))


def _term(args):
    t, l = args
    q, n, d, tab = _worker
    return t, l, _enumerator_mpz(q, n, d, l) * tab.nu(l, t)


class ErrorRatio:
    """Evaluates g(t) for one code, caching curve points and shared tables."""

    def __init__(self, params, jobs=1, checkpoint=None, progress=None):
        self.params = params
        self.jobs = max(1, int(jobs))
        self.checkpoint = checkpoint
        self.progress = progress
        self._points = {}
        self._enum = {}
        self._ball = None
        self._pool = None

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def weight(self, l):
        if l not in self._enum:
            p = self.params
            self._enum[l] = _enumerator_mpz(p.q, p.n, p.d, l)
        return self._enum[l]

    def ball(self, t):
        if self._ball is None:
            p = self.params
            acc = mpz(0)
            self._ball = []
            for s in ball_layers(p.q, p.n, p.n):
                acc += s
                self._ball.append(acc)
        return self._ball[t]

    def terms(self, t):
        """{l: A_l nu_t(l)} for l in [d, min(n, 2t)]."""
        p = self.params
        ls = list(range(p.d, min(p.n, 2 * t) + 1))
        out = {}
        todo = []
        for l in ls:
            hit = self.checkpoint.get(t, l) if self.checkpoint else None
            if hit is None:
                todo.append(l)
            else:
                out[l] = hit
        if self.jobs > 1 and len(todo) > 1:
            if self._pool is None:
                self._pool = ProcessPoolExecutor(self.jobs, initializer=_init_worker,
                                                 initargs=(p.q, p.n, p.d))
            results = self._pool.map(_term, [(t, l) for l in todo], chunksize=1)
        else:
            tab = confusability.table(p.q, p.n)
            results = ((t, l, self.weight(l) * tab.nu(l, t)) for l in todo)
        for done, (_, l, val) in enumerate(results, 1):
            out[l] = val
            if self.checkpoint:
                self.checkpoint.put(t, l, val)
            if self.progress:
                self.progress(t, done, len(todo))
        return out

    def numerator(self, t):
        terms = self.terms(t)
        # fixed summation order; the result is exact anyway
        return sum((terms[l] for l in sorted(terms)), mpz(0))

    def value(self, t):
        return self.point(t).value

    def point(self, t):
        n = self.params.n
        if not 0 <= t <= n:
            raise ValueError(f"radius {t} outside [0, {n}]")
        if t not in self._points:
            num = self.numerator(t)
            val = Fraction(int(num), int(self.ball(t)))
            self._points[t] = ExactCurvePoint(t, Fraction(t, n), val, ratio_to_float(val))
            log.info("g(%d/%d) ~ %s", t, n, self._points[t].value_float)
        return self._points[t]

    def evaluated(self):
        return [self._points[t] for t in sorted(self._points)]


def g_upper(params, t):
    """Exact value of the error-ratio estimator at radius t."""
    with ErrorRatio(params) as est:
        return est.value(t)


def curve(params, t_min=0, t_max=None, jobs=1, checkpoint=None):
    t_max = params.n if t_max is None else t_max
    with ErrorRatio(params, jobs=jobs, checkpoint=checkpoint) as est:
        return [est.point(t) for t in range(t_min, t_max + 1)]


def monotone_violations(points):
    """Adjacent evaluated pairs (t1, t2) with g(t1) > g(t2)."""
    pts = sorted(points, key=lambda p: p.t)
    return [(a.t, b.t) for a, b in zip(pts, pts[1:]) if a.value > b.value]


def slope_at(points, t):
    """Central difference of the curve at radius t, in units of p."""
    by_t = {p.t: p for p in points}
    if t - 1 not in by_t or t + 1 not in by_t:
        raise ValueError(f"slope at t={t} needs points at t={t - 1} and t={t + 1}")
    lo, hi = by_t[t - 1], by_t[t + 1]
    return ratio_to_float((hi.value - lo.value) / (hi.p - lo.p))


def _linear(est, lo, hi):
    for t in range(lo + 1, hi + 1):
        if est.value(t) >= HALF:
            return t
    raise NoCrossingError("estimator stays below 1/2")


def find_threshold(params, search="bisection", t_min=None, t_max=None,
                   jobs=1, checkpoint=None, progress=None):
    """Adjacent-radius bracket around the first radius with g >= 1/2."""
    if search in ("bisect",):
        search = "bisection"
    if search not in ("bisection", "linear"):
        raise ValueError(f"unknown search {search!r}")
    n, d = params.n, params.d
    # g vanishes while 2t < d, so the scan can start at the last such radius
    lo = (d - 1) // 2 if t_min is None else t_min
    hi = n if t_max is None else t_max
    if not 0 <= lo < hi <= n:
        raise ValueError(f"bad radius range [{lo}, {hi}]")
    with ErrorRatio(params, jobs=jobs, checkpoint=checkpoint, progress=progress) as est:
        if est.value(lo) >= HALF:
            raise NoCrossingError(f"estimator already >= 1/2 at t={lo}")
        if est.value(hi) < HALF:
            raise NoCrossingError(f"estimator still < 1/2 at t={hi}")
        fallback = False
        if search == "bisection":
            a, b = lo, hi
            while b - a > 1:
                mid = (a + b) // 2
                if est.value(mid) >= HALF:
                    b = mid
                else:
                    a = mid
            cross = b
            bad = monotone_violations(est.evaluated())
            if bad:
                log.warning("non-monotone estimator at %s; falling back to a linear scan", bad)
                fallback = True
                cross = _linear(est, lo, hi)
        else:
            cross = _linear(est, lo, hi)
        slope = math.nan
        if cross + 1 <= n:
            est.point(cross + 1)
            est.point(cross - 1)
            slope = slope_at(est.evaluated(), cross)
        pts = est.evaluated()
        bad = monotone_violations(pts)
        return ThresholdReport(
            q=params.q, n=n, k=params.k, d=d,
            bracket_low=Fraction(cross - 1, n), bracket_high=Fraction(cross, n),
            t_cross=cross, slope=slope, search=search, points=pts,
            monotone=not bad, violations=bad, fallback=fallback)
