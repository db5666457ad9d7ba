"""Small explicit q-ary Hamming spaces and the q-ary Margulis-Russo identity.

Words are tuples of ints in ``range(q)``.  A set is *increasing* when it is
closed under enlarging supports: if ``y`` is in the set, so is every ``x``
with ``supp(y) <= supp(x)`` (the values on the support are irrelevant).  Such
a set is therefore a union of "support classes", which is how it is stored
and checked here.

Measures are exact polynomials in ``p`` with ``Fraction`` coefficients.
"""

from dataclasses import dataclass
from fractions import Fraction
import itertools
import random

from .exactmath import binomial

ENUMERATION_BUDGET = 1 << 20


def weight(x):
    return sum(1 for s in x if s != 0)


def support(x):
    return frozenset(i for i, s in enumerate(x) if s != 0)


def _support_mask(x):
    m = 0
    for i, s in enumerate(x):
        if s:
            m |= 1 << i
    return m


def check_budget(q, n, budget=ENUMERATION_BUDGET):
    if q < 2 or n < 0:
        raise ValueError(f"bad space q={q}, n={n}")
    if q ** n > budget:
        raise ValueError(f"space of size {q}^{n} exceeds enumeration budget {budget}")


def all_words(q, n):
    check_budget(q, n)
    return itertools.product(range(q), repeat=n)


def words_with_support(q, n, mask):
    """All words whose support is exactly the coordinate set encoded by ``mask``."""
    slots = [range(1, q) if mask >> i & 1 else (0,) for i in range(n)]
    return itertools.product(*slots)


def neighbours(x, q):
    """Words at Hamming distance exactly one from ``x``."""
    x = list(x)
    for i, s in enumerate(x):
        for v in range(q):
            if v != s:
                x[i] = v
                yield tuple(x)
        x[i] = s


class MeasurePolynomial:
    """Univariate polynomial in p with exact rational coefficients.

    ``coeffs[i]`` multiplies ``p**i``; trailing zeros are stripped, so the zero
    polynomial has no coefficients at all.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_layers(cls, q, n, layers):
        """sum_k layers[k] (p/(q-1))^k (1-p)^(n-k), expanded."""
        out = [Fraction(0)] * (n + 1)
        for k, count in enumerate(layers):
            if not count:
                continue
            scale = Fraction(count, (q - 1) ** k)
            for j in range(n - k + 1):
                term = scale * binomial(n - k, j)
                out[k + j] += -term if j & 1 else term
        return cls(out)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __call__(self, p):
        acc = Fraction(0) if isinstance(p, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * p + (c if isinstance(acc, Fraction) else float(c))
        return acc

    def derivative(self):
        return MeasurePolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def times_p(self):
        return MeasurePolynomial((0,) + self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return MeasurePolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m))

    def __neg__(self):
        return MeasurePolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, MeasurePolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "MeasurePolynomial(0)"
        terms = [f"{c}*p^{i}" for i, c in enumerate(self.coeffs) if c]
        return "MeasurePolynomial(" + " + ".join(terms) + ")"


def _classes_increasing(n, masks):
    """Upward closure test on a set of supports (single-coordinate steps suffice)."""
    for m in masks:
        for i in range(n):
            if not m >> i & 1 and (m | 1 << i) not in masks:
                return False
    return True


def is_increasing(q, n, members):
    """True iff ``members`` is closed under support inclusion."""
    members = set(members)
    masks = {}
    for x in members:
        m = _support_mask(x)
        masks[m] = masks.get(m, 0) + 1
    # membership must not depend on the values on the support
    for m, cnt in masks.items():
        if cnt != (q - 1) ** bin(m).count("1"):
            return False
    return _classes_increasing(n, set(masks))


@dataclass(frozen=True)
class IncreasingSet:
    q: int
    n: int
    members: frozenset

    def __post_init__(self):
        check_budget(self.q, self.n)
        object.__setattr__(self, "members", frozenset(tuple(x) for x in self.members))
        for x in self.members:
            if len(x) != self.n or any(not 0 <= s < self.q for s in x):
                raise ValueError(f"{x} is not a word of F_{self.q}^{self.n}")
        if not is_increasing(self.q, self.n, self.members):
            raise ValueError("set is not closed under support inclusion")

    def __contains__(self, x):
        return tuple(x) in self.members

    def __len__(self):
        return len(self.members)

    def layers(self):
        """|A_k| for k = 0..n."""
        out = [0] * (self.n + 1)
        for x in self.members:
            out[weight(x)] += 1
        return out


def up_closure(seeds, q, n):
    """Smallest increasing set of F_q^n containing ``seeds``."""
    check_budget(q, n)
    masks = set()
    stack = []
    for x in seeds:
        if len(x) != n:
            raise ValueError(f"seed {x} has wrong length")
        m = _support_mask(x)
        if m not in masks:
            masks.add(m)
            stack.append(m)
    while stack:
        m = stack.pop()
        for i in range(n):
            up = m | 1 << i
            if up not in masks:
                masks.add(up)
                stack.append(up)
    members = frozenset(w for m in masks for w in words_with_support(q, n, m))
    return IncreasingSet(q, n, members)


def random_increasing_set(q, n, rng, max_seeds=8):
    """Up-closure of 1..max_seeds uniformly random words."""
    m = rng.randint(1, max_seeds)
    seeds = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(m)]
    return up_closure(seeds, q, n)


def layer_counts(q, n, words):
    out = [0] * (n + 1)
    for x in words:
        out[weight(x)] += 1
    return out


def measure_poly(A, q=None, n=None):
    """mu_p(A) as an exact polynomial.

    ``A`` is normally an ``IncreasingSet``; any explicit collection of words is
    accepted when ``q`` and ``n`` are given, since the measure itself does not
    need monotonicity.
    """
    if isinstance(A, IncreasingSet):
        return MeasurePolynomial.from_layers(A.q, A.n, A.layers())
    if q is None or n is None:
        raise ValueError("q and n are required for a plain word collection")
    return MeasurePolynomial.from_layers(q, n, layer_counts(q, n, A))


def boundary_count(x, A):
    """h_A(x): neighbours of ``x`` at distance one that fall outside ``A``."""
    x = tuple(x)
    if x not in A.members:
        raise ValueError(f"{x} is not a member of the set")
    return sum(1 for y in neighbours(x, A.q) if y not in A.members)


def boundary_layers(A):
    """D_k = sum of h_A(x) over members of weight k, counted directly."""
    out = [0] * (A.n + 1)
    for x in A.members:
        out[weight(x)] += boundary_count(x, A)
    return out


def boundary_layers_closed_form(A):
    """D_k = k|A_k| - (n-k+1)(q-1)|A_{k-1}| for k >= 1, D_0 = 0."""
    q, n = A.q, A.n
    lay = A.layers()
    return [0] + [k * lay[k] - (n - k + 1) * (q - 1) * lay[k - 1] for k in range(1, n + 1)]


def margulis_russo_residual(A):
    """p * d/dp mu_p(A) - sum_{x in A} h_A(x) mu_p(x); zero iff the identity holds."""
    if not isinstance(A, IncreasingSet):
        # IncreasingSet validates on construction
        raise TypeError("margulis_russo_residual needs an IncreasingSet")
    lhs = measure_poly(A).derivative().times_p()
    rhs = MeasurePolynomial.from_layers(A.q, A.n, boundary_layers(A))
    return lhs - rhs


def check_margulis_russo(trials, seed, qs=(3, 4, 5), ns=(2, 3, 4)):
    """Residuals for ``trials`` seeded random increasing sets; returns failing sets."""
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        q, n = rng.choice(qs), rng.choice(ns)
        A = random_increasing_set(q, n, rng)
        if not margulis_russo_residual(A).is_zero():
            bad.append(A)
    return bad
