"""Exact combinatorial primitives shared by the rest of the package.

Everything here works on unbounded integers.  Hot loops elsewhere use
``gmpy2.mpz`` directly; the public functions below return plain ``int`` and
``fractions.Fraction`` so callers never have to care.
"""

from fractions import Fraction
import math

import gmpy2
import mpmath
from gmpy2 import mpz

ExactRatio = Fraction

# digits of working precision for logarithms of huge integers
_LOG_DPS = 40


def binomial(n, k):
    """C(n, k), zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("binomial needs n >= 0")
    if k < 0 or k > n:
        return 0
    return int(gmpy2.comb(n, k))


def comb_mpz(n, k):
    # unchecked fast path for inner loops
    if k < 0 or k > n:
        return mpz(0)
    return gmpy2.comb(n, k)


def _check_space(q, n, t):
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    if n < 0:
        raise ValueError(f"length must be >= 0, got {n}")
    if t < 0 or t > n:
        raise ValueError(f"radius {t} outside [0, {n}]")


def ball_layers(q, n, t):
    """Sphere sizes C(n, i) (q-1)^i for i = 0..t, as mpz."""
    _check_space(q, n, t)
    out = []
    pw = mpz(1)
    for i in range(t + 1):
        out.append(gmpy2.comb(n, i) * pw)
        pw *= q - 1
    return out


def ball_volume(q, n, t):
    """Number of words of F_q^n within Hamming distance t of a fixed word."""
    return int(sum(ball_layers(q, n, t), mpz(0)))


def log_q(value, q):
    """log base q of a positive integer of any size, as a float."""
    if value <= 0:
        raise ValueError("log of a non-positive number")
    with mpmath.workdps(_LOG_DPS):
        return float(mpmath.log(mpmath.mpf(mpz(value))) / mpmath.log(q))


def vol(q, n, t):
    """Normalised log-volume (1/n) log_q |B(t)|."""
    if n <= 0:
        raise ValueError("vol needs n >= 1")
    size = ball_volume(q, n, t)
    with mpmath.workdps(_LOG_DPS):
        return float(mpmath.log(mpmath.mpf(mpz(size))) / (n * mpmath.log(q)))


def entropy_q(q, x):
    """q-ary entropy of x in [0, 1]; endpoints by continuity."""
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument {x} outside [0, 1]")
    lq = math.log(q)
    h = x * math.log(q - 1) / lq
    if 0.0 < x < 1.0:
        h -= (x * math.log(x) + (1.0 - x) * math.log1p(-x)) / lq
    return h


def to_decimal(x):
    # str(int) refuses > 4300 digits on recent CPython; gmpy2 has no such cap
    return gmpy2.mpz(x).digits(10)


def from_decimal(s):
    return int(mpz(s.strip()))


def ratio_to_str(r):
    """'num/den' rendering of a rational, exact at any size."""
    r = Fraction(r)
    return f"{to_decimal(r.numerator)}/{to_decimal(r.denominator)}"


def ratio_from_str(s):
    num, _, den = s.partition("/")
    return Fraction(from_decimal(num), from_decimal(den) if den else 1)


def ratio_to_float(r):
    """Float value of an exact ratio whose terms may be far beyond float range."""
    r = Fraction(r)
    if r == 0:
        return 0.0
    try:
        return float(gmpy2.mpq(mpz(r.numerator), mpz(r.denominator)))
    except OverflowError:
        return math.inf if r > 0 else -math.inf


def format_float(x, digits=12):
    return f"{x:.{digits}g}"
