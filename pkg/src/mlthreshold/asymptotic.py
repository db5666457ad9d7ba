"""Large-q exponent analysis over the confusability polytope.

For q much larger than n, log_q nu_t(l) is, to first order, the maximum of
beta + gamma over the real polytope of the confusability system.  That LP is
solved exactly by enumerating vertices: every 3-subset of the nine
hyperplanes whose 3x3 system is non-singular gives a candidate point, kept if
it satisfies all nine inequalities.

All arithmetic is on integers.  Each candidate is ``adj(M) b / det(M)``; the
adjugates and determinants depend only on which rows are picked, so they are
tabulated once and the right-hand sides are batched with numpy (int64 is ample:
entries are bounded by a small multiple of n).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import itertools
import math

import numpy as np

from .confusability import SystemS

NEG_INF = float("-inf")

_A = np.array(SystemS.COEFFS, dtype=np.int64)
# rhs = _R @ (w, t, n, 1), row order as in SystemS.COEFFS
_R = np.array([
    (0, 0, 0, 0),
    (1, 0, 0, 0),
    (0, 0, 0, 0),
    (1, 0, 0, 0),
    (0, 0, 0, 0),
    (-1, 0, 1, 0),
    (-1, 1, 0, 0),
    (0, 1, 0, 0),
    (1, 0, 0, 0),
], dtype=np.int64)


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _adj3(m):
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = (m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                     - m[rows[0]][cols[1]] * m[rows[1]][cols[0]])
            cof[i][j] = (-1) ** (i + j) * minor
    return [[cof[j][i] for j in range(3)] for i in range(3)]


@lru_cache(maxsize=1)
def _vertex_table():
    subsets, adjs, dets = [], [], []
    for rows in itertools.combinations(range(len(SystemS.COEFFS)), 3):
        m = [SystemS.COEFFS[r] for r in rows]
        det = _det3(m)
        if det == 0:
            continue
        adj = _adj3(m)
        if det < 0:
            det, adj = -det, [[-v for v in row] for row in adj]
        subsets.append(rows)
        adjs.append(adj)
        dets.append(det)
    subsets = np.array(subsets, dtype=np.int64)
    adjs = np.array(adjs, dtype=np.int64)
    dets = np.array(dets, dtype=np.int64)
    common = math.lcm(*(int(x) for x in dets))
    return subsets, adjs, dets, common


@dataclass(frozen=True)
class PolytopeVertex:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    active: tuple


def _candidates(ws, t, n):
    """Numerators (L, K, 3) and feasibility mask (L, K) for each weight in ws."""
    subsets, adjs, dets, _ = _vertex_table()
    ws = np.asarray(ws, dtype=np.int64)
    vec = np.stack([ws, np.full_like(ws, t), np.full_like(ws, n), np.ones_like(ws)], axis=1)
    b = vec @ _R.T                                    # (L, 9)
    bS = b[:, subsets]                                # (L, K, 3)
    num = np.einsum("kij,lkj->lki", adjs, bS)         # (L, K, 3)
    lhs = np.einsum("ri,lki->lkr", _A, num)           # (L, K, 9)
    ok = (lhs <= dets[None, :, None] * b[:, None, :]).all(axis=2)
    return num, ok


def enumerate_vertices(w, t, n):
    """Distinct feasible vertices of the (alpha, beta, gamma) polytope."""
    subsets, _, dets, _ = _vertex_table()
    num, ok = _candidates([w], t, n)
    seen = {}
    for k in np.nonzero(ok[0])[0]:
        d = int(dets[k])
        point = tuple(Fraction(int(v), d) for v in num[0, k])
        if point not in seen:
            seen[point] = PolytopeVertex(*point, active=tuple(int(r) for r in subsets[k]))
    return list(seen.values())


def mu_exponents(ws, t, n):
    """LP value max(beta + gamma) for each weight in ws; None where infeasible."""
    _, _, dets, common = _vertex_table()
    ws = list(ws)
    if not ws:
        return []
    num, ok = _candidates(ws, t, n)
    scaled = (num[:, :, 1] + num[:, :, 2]) * (common // dets)[None, :]
    scaled = np.where(ok, scaled, np.iinfo(np.int64).min)
    best = scaled.max(axis=1)
    return [Fraction(int(v), common) if f else None for v, f in zip(best, ok.any(axis=1))]


def mu_exponent(w, t, n):
    """n*mu(w, t): exact LP optimum, or None when the polytope is empty."""
    return mu_exponents([w], t, n)[0]


@dataclass(frozen=True)
class ExponentPoint:
    t: int
    iota: object     # Fraction, or NEG_INF when no weight is in range


def iota(params, t):
    """max over l in [d, min(n, 2t)] of 1 + l - d - t + n*mu(l, t)."""
    d, n = params.d, params.n
    ls = range(d, min(n, 2 * t) + 1)
    best = NEG_INF
    for l, m in zip(ls, mu_exponents(ls, t, n)):
        if m is not None:
            val = 1 + l - d - t + m
            if best == NEG_INF or val > best:
                best = val
    return ExponentPoint(t, best)


def asymptotic_curve(params, t_min=0, t_max=None):
    t_max = params.n if t_max is None else t_max
    return [iota(params, t) for t in range(t_min, t_max + 1)]


def asymptotic_threshold(params):
    """Smallest t/n with iota >= 0, scanning up from ceil(d/2)."""
    for t in range((params.d + 1) // 2, params.n + 1):
        if iota(params, t).iota >= 0:
            return Fraction(t, params.n)
    return None
