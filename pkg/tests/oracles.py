"""Exhaustive reference counts, independent of the closed forms under test."""

import numpy as np

from mlthreshold.channel_sim import all_words


def pair_counts(code, chunk=256):
    """[#{(c, x): c != 0, w(x) <= t, d(x, c) <= w(x)} for t = 0..n]."""
    words = all_words(code.q, code.n)
    nz = code.nonzero_codewords()
    wt = (words != 0).sum(axis=1)
    per_weight = np.zeros(code.n + 1, dtype=np.int64)
    for s in range(0, len(words), chunk):
        w = words[s:s + chunk]
        dist = (w[:, None, :] != nz[None, :, :]).sum(axis=2)
        close = (dist <= wt[s:s + chunk, None]).sum(axis=1)
        np.add.at(per_weight, wt[s:s + chunk], close)
    return [int(v) for v in np.cumsum(per_weight)]


def misdecoded_counts(code):
    """[#{x in A_0 : w(x) <= t} for t = 0..n], each word counted once."""
    words = all_words(code.q, code.n)
    nz = code.nonzero_codewords()
    wt = (words != 0).sum(axis=1)
    bad = np.zeros(len(words), dtype=bool)
    for c in nz:
        bad |= (words != c).sum(axis=1) <= wt
    return [int(v) for v in np.cumsum(np.bincount(wt[bad], minlength=code.n + 1))]


def ball_counts(q, n):
    words = all_words(q, n)
    wt = (words != 0).sum(axis=1)
    return [int(v) for v in np.cumsum(np.bincount(wt, minlength=n + 1))]
