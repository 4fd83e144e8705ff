"""Samplers for step laws: alias table over the body, analytic tail inversion.

Streams are counter-based (SplitMix64 finalizer over a (seed, stream, counter)
triple), so replicas are splittable, merge order-independent, and draws are
bit-identical across the numba and numpy backends.
"""
import numpy as np

from ._backend import USE_NUMBA

_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U53 = 1.0 / 9007199254740992.0


def mix64(z):
    """SplitMix64 finalizer; z uint64 scalar or array."""
    z = (z + _GOLD).astype(np.uint64) if isinstance(z, np.ndarray) else np.uint64(z + _GOLD)
    z ^= z >> np.uint64(30)
    z = np.uint64(z * _MIX1) if not isinstance(z, np.ndarray) else (z * _MIX1).astype(np.uint64)
    z ^= z >> np.uint64(27)
    z = np.uint64(z * _MIX2) if not isinstance(z, np.ndarray) else (z * _MIX2).astype(np.uint64)
    z ^= z >> np.uint64(31)
    return z


def stream_state(seed, stream):
    """Initial state of substream `stream` under master `seed`."""
    return mix64(np.uint64(seed) ^ (np.uint64(stream) * _MIX1))


def build_alias(prob):
    """Vose alias table: returns (cut, alias) with P[i] = prob[i]/sum."""
    n = len(prob)
    scaled = np.asarray(prob, dtype=np.float64) * (n / np.sum(prob))
    cut = np.ones(n)
    alias = np.arange(n, dtype=np.int64)
    small = [i for i in range(n) if scaled[i] < 1.0]
    large = [i for i in range(n) if scaled[i] >= 1.0]
    scaled = scaled.copy()
    while small and large:
        s = small.pop()
        l = large.pop()
        cut[s] = scaled[s]
        alias[s] = l
        scaled[l] -= 1.0 - scaled[s]
        (small if scaled[l] < 1.0 else large).append(l)
    return cut, alias


class Sampler:
    """Draws i.i.d. steps of a StepLaw.

    The body (|k| <= limit) is drawn through an alias table; the analytic
    tails are drawn by inverse CDF of the Pareto-sum descriptor conditioned
    on exceeding the limit.
    """

    def __init__(self, law, body_limit=None):
        lim = law.cutoff if body_limit is None else int(body_limit)
        lim = max(lim, 2)
        self.law = law
        self.limit = lim
        ks = np.arange(-lim, lim + 1, dtype=np.int64)
        pv = np.maximum(np.atleast_1d(law.pmf(ks)), 0.0)
        self.tail_sides = []
        tp = tm = 0.0
        for c in law.comps:
            if c.start > lim + 1:
                raise ValueError("tail component starts beyond sampler body limit")
            m = c.mass_from(lim + 1)
            self.tail_sides.append((c.side, m, c.w, c.s, c.beta))
            if c.side > 0:
                tp += m
            else:
                tm += m
        self.p_tail_plus = tp
        self.p_tail_minus = tm
        body_mass = 1.0 - tp - tm
        self.ks = ks
        self.cut, self.alias = build_alias(pv / body_mass)
        self.body_mass = body_mass
        self._pack = None

    def pack(self):
        """Plain-array pack for the jitted MC kernels."""
        if self._pack is None:
            tails = np.zeros((2, 3))  # rows: plus, minus; cols: w, s, mass-beyond
            for side, m, w, s, beta in self.tail_sides:
                if beta != 0.0:
                    raise ValueError("jitted sampling requires polynomial tails")
                row = 0 if side > 0 else 1
                tails[row] = (w, s, m)
            self._pack = (self.cut, self.alias, np.int64(self.limit),
                          self.p_tail_plus, self.p_tail_minus, tails)
        return self._pack

    def draw(self, seed, n, stream=0):
        """n i.i.d. steps from substream (seed, stream); vectorized numpy path."""
        n = int(n)
        if n == 0:
            return np.zeros(0, dtype=np.int64)
        base = stream_state(seed, stream)
        ctr = np.arange(n, dtype=np.uint64)
        u1 = (mix64(base ^ (3 * ctr + 0) * _MIX2) >> np.uint64(11)) * _U53
        u2 = (mix64(base ^ (3 * ctr + 1) * _MIX2) >> np.uint64(11)) * _U53
        u3 = (mix64(base ^ (3 * ctr + 2) * _MIX2) >> np.uint64(11)) * _U53
        return self._decode(u1, u2, u3)

    def _decode(self, u1, u2, u3):
        n = len(u1)
        out = np.zeros(n, dtype=np.int64)
        tp, tm = self.p_tail_plus, self.p_tail_minus
        in_plus = u1 < tp
        in_minus = (~in_plus) & (u1 < tp + tm)
        body = ~(in_plus | in_minus)
        nb = self.cut.shape[0]
        idx = np.minimum((u2[body] * nb).astype(np.int64), nb - 1)
        take_alias = u3[body] >= self.cut[idx]
        out[body] = self.ks[np.where(take_alias, self.alias[idx], idx)]
        for side, m, w, s, beta in self.tail_sides:
            mask = in_plus if side > 0 else in_minus
            if not np.any(mask):
                continue
            u = (u1[mask] - (0.0 if side > 0 else tp)) / m
            j = pareto_tail_inverse(u * m, w, s, self.limit)
            out[mask] = side * j
        return out

    def exact_tail_plus(self, x):
        return self.law.mu_plus(x)


def pareto_tail_inverse(v, w, s, lim):
    """Smallest j > lim with mu(j) <= v where mu(j) = w zeta(s, j+1), vectorized."""
    v = np.asarray(v, dtype=np.float64)
    y = v * (s - 1.0) / w
    c2 = (s * s - 1.0) / 24.0
    j0 = y ** (1.0 / (1.0 - s)) - 0.5
    j0 = (y / (1.0 + c2 / ((j0 + 0.5) * (j0 + 0.5)))) ** (1.0 / (1.0 - s)) - 0.5
    j = np.ceil(j0).astype(np.int64)
    return np.maximum(j, lim + 1)
