"""Expansion tables for sums over Pareto-type lattice tails.

For a tail component with pmf w * k^{-s} on k = 1, 2, ... the two series

    u(t) = sum_k k^{-s} (1 - cos kt)          (-> t * alpha-side)
    v(t) = sum_k k^{-s} (kt - sin kt)pm       (-> t * beta-side, needs s > 2)

are evaluated without cancellation from the Hurwitz expansion of
Li_s(e^{it}) on |t| < 2pi:

    W(t) := u(t) + i v(t)
          = -Gamma(1-s) (-it)^{s-1} - sum_{k>=2} zeta(s-k) (it)^k / k!

(the k=0 term cancels zeta(s) exactly, the k=1 term is the mean and is
dropped from v by construction).  For integer s = m the singular term is
replaced by -(it)^{m-1}/(m-1)! * [H_{m-1} - ln(-it)]; for m = 2 the mean is
infinite and the v-slot then carries Im sum_k k^{-2}(1 - e^{ikt}) instead,
which is what the infinite-mean renewal laws need.

Coefficients are computed once per exponent with mpmath and cached.
"""
import math
from functools import lru_cache

import numpy as np

NCOEF = 100  # series truncated at k = NCOEF; terms decay like (t/2pi)^k


@lru_cache(maxsize=64)
def tail_tables(s: float):
    """Return (coefs, sing) for exponent s.

    coefs : complex128[NCOEF+1], coefs[k] = -zeta(s-k) i^k / k!  (k >= 2, else 0);
            for integer s the slot k = s-1 is zeroed (handled by sing).
    sing  : float64[4] packed singular-term data,
            non-integer s: (0, -Gamma(1-s), cos(-pi(s-1)/2), sin(-pi(s-1)/2))
            integer s = m: (1, m-1, H_{m-1}, 1/(m-1)!)
    """
    import mpmath as mp

    mp.mp.dps = 30
    is_int = abs(s - round(s)) < 1e-12
    m = int(round(s))
    coefs = np.zeros(NCOEF + 1, dtype=np.complex128)
    for k in range(2, NCOEF + 1):
        if is_int and k == m - 1:
            continue
        zk = mp.zeta(mp.mpf(s) - k)
        coefs[k] = complex(-float(zk) * (1j) ** k / float(mp.factorial(k)))
    if is_int:
        if m < 2:
            raise ValueError("tail exponent must be >= 2")
        harm = float(mp.harmonic(m - 1))
        sing = np.array([1.0, float(m - 1), harm, 1.0 / math.factorial(m - 1)])
    else:
        g = float(mp.gamma(1 - mp.mpf(s)))
        ph = -0.5 * math.pi * (s - 1.0)
        sing = np.array([0.0, -g, math.cos(ph), math.sin(ph)])
    return coefs, sing


def zeta_value(x: float) -> float:
    """Riemann zeta at arbitrary real x != 1 (mpmath, cached upstream)."""
    import mpmath as mp

    mp.mp.dps = 25
    return float(mp.zeta(x))
