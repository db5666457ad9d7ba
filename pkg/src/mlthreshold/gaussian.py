"""Standard normal helpers and the sharp-threshold bound curves."""

from dataclasses import dataclass
import math
from statistics import NormalDist

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

INCREASING_SET = "increasing-set"
ERROR_PROBABILITY = "error-probability"


def std_normal_pdf(x):
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def std_normal_cdf(x):
    # erfc keeps full relative accuracy in the lower tail
    return 0.5 * math.erfc(-x / _SQRT2)


def std_normal_quantile(u):
    """Phi^{-1}(u), polished with Newton steps on Phi."""
    if not 0.0 < u < 1.0:
        raise ValueError(f"quantile argument {u} outside (0, 1)")
    x = NormalDist().inv_cdf(u)
    for _ in range(8):
        err = std_normal_cdf(x) - u
        if abs(err) <= 1e-15:
            break
        x -= err / std_normal_pdf(x)
    return x


def psi(u):
    """phi(Phi^{-1}(u))."""
    return std_normal_pdf(std_normal_quantile(u))


@dataclass(frozen=True)
class BoundCurveSpec:
    """Parameters of a threshold bound curve.

    gap is Delta (increasing-set form) or the minimum distance d
    (error-probability form); pivot is theta or p_c respectively.
    """
    gap: float
    pivot: float
    orientation: str = ERROR_PROBABILITY

    def __post_init__(self):
        if not self.gap > 0:
            raise ValueError("gap must be positive")
        if not 0.0 < self.pivot < 1.0:
            raise ValueError("pivot must lie in (0, 1)")
        if self.orientation not in (INCREASING_SET, ERROR_PROBABILITY):
            raise ValueError(f"unknown orientation {self.orientation!r}")


def _open_unit(p):
    if not 0.0 < p < 1.0:
        raise ValueError(f"p={p} outside (0, 1)")


def theorem1_bound(p, spec):
    """Phi(sqrt(2 Delta) (sqrt(-ln theta) - sqrt(-ln p)))."""
    _open_unit(p)
    if spec.orientation != INCREASING_SET:
        raise ValueError("theorem1_bound needs an increasing-set curve")
    arg = math.sqrt(2.0 * spec.gap) * (math.sqrt(-math.log(spec.pivot)) - math.sqrt(-math.log(p)))
    return std_normal_cdf(arg)


def theorem2_bound(p, spec):
    """1 - Phi(sqrt(d) (sqrt(-ln(1-p_c)) - sqrt(-ln(1-p)))).

    Upper-bounds the ML error probability for p <= p_c and lower-bounds it
    for p >= p_c.
    """
    _open_unit(p)
    if spec.orientation != ERROR_PROBABILITY:
        raise ValueError("theorem2_bound needs an error-probability curve")
    arg = math.sqrt(spec.gap) * (math.sqrt(-math.log1p(-spec.pivot)) - math.sqrt(-math.log1p(-p)))
    # 1 - Phi(a) == Phi(-a), without cancellation
    return std_normal_cdf(-arg)


def stated_threshold_slope(d, p_c):
    """sqrt(d) / (sqrt(2 pi) (1 - p_c)), the commonly quoted slope at p_c."""
    return math.sqrt(d) * _INV_SQRT_2PI / (1.0 - p_c)


def theorem2_slope(spec):
    """Exact derivative of ``theorem2_bound`` at its pivot.

    Differs from ``stated_threshold_slope`` by the chain-rule factor
    1 / (2 sqrt(-ln(1 - p_c))).
    """
    u = -math.log1p(-spec.pivot)
    return math.sqrt(spec.gap) * _INV_SQRT_2PI / ((1.0 - spec.pivot) * 2.0 * math.sqrt(u))


def central_difference(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def bound_curve(spec, steps=100):
    """(p, bound) samples on the open grid p = i/steps, 0 < i < steps."""
    fn = theorem1_bound if spec.orientation == INCREASING_SET else theorem2_bound
    return [(i / steps, fn(i / steps, spec)) for i in range(1, steps)]
