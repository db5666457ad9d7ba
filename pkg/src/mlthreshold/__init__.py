"""Exact Maximum-Likelihood decoding threshold estimates for q-ary MDS codes."""

from .mds import CodeParams, validate, weight_distribution, weight_enumerator
from .confusability import nu, nu_bruteforce
from .threshold import find_threshold, g_upper
from .asymptotic import asymptotic_threshold, iota, mu_exponent

__version__ = "0.1.0"
