"""Lattice step distributions with exact bodies and analytic heavy tails.

A law is a finite set of signed atom corrections plus zero or more
Pareto-sum tail components.  A component on side sigma with weight w,
exponent s and start k0 contributes pmf  w * k^{-s} * log^beta(k)  at
sigma*k for k >= k0, so its tail function at integer j >= k0-1 is
mu(j) = w * sum_{k>j} k^{-s} log^beta(k), a step function evaluated in
closed form (beta = 0) or by Euler-Maclaurin summation (beta != 0).

Built-in families
-----------------
stable_attraction(alpha, p) : two-sided Pareto body p(k) ~ A|k|^{-alpha-1}
    split p:q across the sides, mean-zeroed by mass adjustments confined to
    {-1, 0, 1}; in the domain of attraction of the alpha-stable law with
    positivity parameter p.
sparse_spectrum(alpha, n_max): symmetric atoms at +-2^{n^2} with weights
    proportional to 2^{-alpha n^2}; the walk whose potential kernel and
    c/m ratio oscillate.
simple_pm1                  : p(+-1) = 1/2.
renewal_logheavy(c)         : one-sided p(k) = c k^{-2} on k >= 1 (infinite
    mean; only valid as a renewal interarrival law).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._polylog import tail_tables, zeta_value
from ._powsums import pow_sum, zeta_tail

STABLE_CUTOFF = 1 << 20


class LawError(ValueError):
    pass


@dataclass(frozen=True)
class TailComp:
    """One Pareto-sum tail component: pmf w k^{-s} log^beta(k) at side*k, k >= start."""

    side: int           # +1 or -1
    w: float
    s: float            # pmf exponent; tail index alpha = s - 1
    start: int = 1
    beta: float = 0.0   # log-power slowly-varying factor

    def pmf_abs(self, k):
        k = np.asarray(k, dtype=np.float64)
        out = self.w * k ** (-self.s)
        if self.beta:
            out = out * np.log(k) ** self.beta
        return np.where(k >= self.start, out, 0.0)

    def mass_from(self, j):
        """sum_{k>=j} pmf, j >= start."""
        j = max(int(j), self.start)
        if self.beta == 0.0:
            return self.w * float(zeta_tail(self.s, j))
        # log factor: EM with a generous direct head
        head = j + 200_000
        ks = np.arange(j, head, dtype=np.float64)
        direct = float(np.sum(self.w * ks ** (-self.s) * np.log(ks) ** self.beta))
        b = float(head)
        lb = np.log(b)
        tail = self.w * lb ** self.beta * b ** (1 - self.s) / (self.s - 1) \
            * (1.0 + self.beta / ((self.s - 1) * lb))
        return direct + tail

    def partial_moment(self, m, a, b):
        """sum_{k=a}^{b} k^m pmf(k) over this component's support."""
        a = max(int(a), self.start)
        b = int(b)
        if b < a:
            return 0.0
        if self.beta == 0.0:
            return self.w * pow_sum(self.s - m, a, b)
        if b - a > 50_000_000:
            raise LawError("log-power partial moment range too large")
        ks = np.arange(a, b + 1, dtype=np.float64)
        return float(np.sum(self.w * ks ** (m - self.s) * np.log(ks) ** self.beta))

    def tail_moment(self, m, j):
        """sum_{k>j} k^m pmf(k); requires s - m > 1."""
        j = max(int(j), self.start - 1)
        if self.beta == 0.0:
            if self.s - m <= 1.0:
                raise LawError("tail moment diverges")
            return self.w * float(zeta_tail(self.s - m, j + 1))
        cut = max(j + 1, 10_000_000)
        head = self.partial_moment(m, j + 1, cut)
        b = float(cut + 1)
        sm = self.s - m
        tail = self.w * (np.log(b) ** self.beta) * b ** (1 - sm) / (sm - 1)
        return head + tail


def _descriptor_to_dict(comps, side, cutoff):
    mine = [c for c in comps if c.side == side]
    if not mine:
        return {"kind": "zero"}
    d = []
    for c in mine:
        d.append({"index": c.s - 1.0, "scale": c.w / (c.s - 1.0), "pmf_weight": c.w,
                  "logpow": c.beta, "start": max(c.start, cutoff + 1)})
    return {"kind": "pareto", "components": d}


@dataclass
class StepLaw:
    """Zero-mean lattice law: atom corrections + Pareto-sum tail components.

    atoms maps integer k to a (possibly negative) correction added on top of
    the tail components; total pmf must be nonnegative.  `renewal` marks the
    one-sided infinite-mean family, for which the zero-mean and
    irreducibility invariants are waived.
    """

    comps: tuple
    atoms: dict
    cutoff: int
    family: str = "custom"
    params: dict = field(default_factory=dict)
    renewal: bool = False

    def __post_init__(self):
        self.comps = tuple(self.comps)
        self.atoms = {int(k): float(v) for k, v in self.atoms.items()}
        self._pack = None
        self._sampler = None
        self.validate()

    # ---------- basic pmf / tails ----------

    def pmf(self, k):
        k = np.atleast_1d(np.asarray(k, dtype=np.int64))
        out = np.zeros(len(k), dtype=np.float64)
        for c in self.comps:
            kk = np.where(c.side > 0, k, -k)
            good = kk >= c.start
            out[good] += c.pmf_abs(kk[good].astype(np.float64))
        for i, kv in enumerate(k):
            if int(kv) in self.atoms:
                out[i] += self.atoms[int(kv)]
        return out if out.size > 1 else float(out[0])

    def mu_plus(self, x):
        return self._mu_side(+1, x)

    def mu_minus(self, x):
        return self._mu_side(-1, x)

    def _mu_side(self, side, x):
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        j = np.floor(x).astype(np.int64)
        out = np.zeros(len(x))
        for c in self.comps:
            if c.side != side:
                continue
            if c.beta == 0.0:
                a = np.maximum(j + 1, c.start).astype(np.float64)
                out += c.w * zeta_tail(c.s, a)
            else:
                for i, ji in enumerate(j):
                    out[i] += c.mass_from(max(ji + 1, c.start))
        for k, p in self.atoms.items():
            if k * side > 0:
                out += np.where(abs(k) > j, p, 0.0)
        return out if out.size > 1 else float(out[0])

    def side_moment(self, side, m, a, b):
        """E[|X|^m; a <= side*X <= b] for integer 1 <= a <= b."""
        tot = 0.0
        for c in self.comps:
            if c.side == side:
                tot += c.partial_moment(m, a, b)
        for k, p in self.atoms.items():
            if k * side > 0 and a <= abs(k) <= b:
                tot += p * abs(k) ** m
        return tot

    def side_tail_moment(self, side, m, j):
        """E[|X|^m; side*X > j]."""
        tot = 0.0
        for c in self.comps:
            if c.side == side:
                tot += c.tail_moment(m, j)
        for k, p in self.atoms.items():
            if k * side > 0 and abs(k) > j:
                tot += p * abs(k) ** m
        return tot

    @property
    def mean(self):
        m = 0.0
        for c in self.comps:
            m += c.side * c.tail_moment(1, 0)
        for k, p in self.atoms.items():
            m += k * p
        return m

    @property
    def abs_mean(self):
        return self.side_tail_moment(+1, 1, 0) + self.side_tail_moment(-1, 1, 0)

    def support_gcd(self):
        g = 0
        for c in self.comps:
            if c.w > 0:
                g = math.gcd(g, c.start)
                g = math.gcd(g, c.start + 1)
        for k, p in self.atoms.items():
            if k != 0 and self.pmf(k) > 0:
                g = math.gcd(g, abs(k))
        return g

    def max_up_jump(self):
        """Largest positive support point, or None if unbounded above."""
        if any(c.side > 0 and c.w > 0 for c in self.comps):
            return None
        ks = [k for k, p in self.atoms.items() if k > 0 and self.pmf(k) > 0]
        return max(ks) if ks else 0

    # ---------- validation ----------

    def validate(self):
        mass = sum(c.tail_moment(0, 0) for c in self.comps) + sum(self.atoms.values())
        if abs(mass - 1.0) > 1e-12:
            raise LawError(f"total mass {mass!r} != 1")
        ks = np.array(sorted(self.atoms), dtype=np.int64)
        if ks.size and np.any(self.pmf(ks) < -1e-15):
            raise LawError("negative pmf at atom correction")
        if self.renewal:
            return
        finite_mean = all(c.s - 1.0 > 1.0 for c in self.comps)
        if finite_mean and abs(self.mean) > 1e-10:
            raise LawError(f"mean {self.mean!r} not zero")
        if self.support_gcd() != 1:
            raise LawError("support gcd != 1: walk not irreducible on Z")

    @property
    def period_check(self):
        """True when irreducible on Z with the aperiodicity the kernels need."""
        return self.renewal or self.support_gcd() == 1

    # ---------- frequency pack ----------

    def freq_pack(self):
        if self._pack is not None:
            return self._pack
        atom_k, atom_p = [], []
        for k, p in sorted(self.atoms.items()):
            if k != 0 and p != 0.0:
                atom_k.append(k)
                atom_p.append(p)
        side, sexp, scale, sing_rows, coef_rows = [], [], [], [], []
        for c in self.comps:
            if c.beta != 0.0:
                raise LawError("log-power tails have no polylog pack; use generic ops")
            coefs, sing = tail_tables(c.s)
            side.append(c.side)
            sexp.append(c.s)
            scale.append(c.w)
            sing_rows.append(sing)
            coef_rows.append(coefs)
            for k in range(1, c.start):
                atom_k.append(c.side * k)
                atom_p.append(-c.w * k ** (-c.s))
        nt = len(scale)
        pack = (
            np.array(atom_k, dtype=np.int64),
            np.array(atom_p, dtype=np.float64),
            np.array(side, dtype=np.int64),
            np.array(sexp, dtype=np.float64),
            np.array(scale, dtype=np.float64),
            np.vstack(sing_rows) if nt else np.zeros((0, 4)),
            np.vstack(coef_rows) if nt else np.zeros((0, 1), dtype=np.complex128),
        )
        self._pack = pack
        return pack

    @property
    def zeta_mean_parts(self):
        """(M_plus, M_minus) = E[|X|; X>0], E[|X|; X<0]."""
        return self.side_tail_moment(+1, 1, 0), self.side_tail_moment(-1, 1, 0)

    # ---------- serialization ----------

    def to_json(self, body_limit=None):
        lim = self.cutoff if body_limit is None else min(body_limit, self.cutoff)
        ks = sorted(set(range(-lim, lim + 1)) | set(self.atoms))
        ks = [k for k in ks if abs(k) <= lim]
        pv = self.pmf(np.array(ks, dtype=np.int64))
        pv = np.atleast_1d(pv)
        body = [[int(k), format(p, ".17e")] for k, p in zip(ks, pv) if p != 0.0]
        obj = {
            "body": body,
            "tail_plus": _descriptor_to_dict(self.comps, +1, lim),
            "tail_minus": _descriptor_to_dict(self.comps, -1, lim),
            "cutoff": int(lim),
            "meta": {"family": self.family, "params": self.params,
                     "renewal": self.renewal, "full_cutoff": int(self.cutoff)},
        }
        return json.dumps(obj)

    @staticmethod
    def from_json(text):
        obj = json.loads(text)
        meta = obj.get("meta", {})
        fam = meta.get("family", "custom")
        if fam in ("stable_attraction", "sparse_spectrum", "simple_pm1", "renewal_logheavy"):
            return make_builtin(BuiltinFamilySpec(fam, dict(meta.get("params", {}))))
        cutoff = int(obj["cutoff"])
        atoms = {int(k): float(p) for k, p in obj["body"]}
        comps = []
        for side, key in ((+1, "tail_plus"), (-1, "tail_minus")):
            d = obj.get(key) or {"kind": "zero"}
            if d.get("kind") == "zero":
                continue
            for cd in d["components"]:
                w = cd.get("pmf_weight")
                if w is None:
                    w = cd["scale"] * cd["index"]
                comps.append(TailComp(side, float(w), float(cd["index"]) + 1.0,
                                      int(cd.get("start", cutoff + 1)), float(cd.get("logpow", 0.0))))
        return StepLaw(tuple(comps), atoms, cutoff, family=fam,
                       params=meta.get("params", {}), renewal=bool(meta.get("renewal", False)))

    def law_hash(self):
        import hashlib

        key = json.dumps({"family": self.family, "params": self.params,
                          "comps": [(c.side, c.w, c.s, c.start, c.beta) for c in self.comps],
                          "atoms": sorted(self.atoms.items())}, sort_keys=True)
        return hashlib.sha256(key.encode()).hexdigest()[:16]

    # ---------- sampling ----------

    def sampler(self, body_limit=None):
        from .sampling import Sampler

        if self._sampler is None or body_limit is not None:
            s = Sampler(self, body_limit=body_limit)
            if body_limit is None:
                self._sampler = s
            return s
        return self._sampler


@dataclass(frozen=True)
class BuiltinFamilySpec:
    family: str
    params: dict = field(default_factory=dict)


def make_builtin(spec) -> StepLaw:
    """Construct a built-in law; see module docstring for the families."""
    if isinstance(spec, str):
        spec = BuiltinFamilySpec(spec, {})
    fam, prm = spec.family, dict(spec.params)
    if fam == "simple_pm1":
        return StepLaw((), {1: 0.5, -1: 0.5}, cutoff=1, family=fam)
    if fam == "sparse_spectrum":
        alpha = float(prm.get("alpha", 1.5))
        n_max = int(prm.get("n_max", 4))
        if not (1.0 < alpha <= 2.0) or n_max < 1:
            raise LawError("sparse_spectrum needs alpha in (1,2], n_max >= 1")
        xn = [2 ** (n * n) for n in range(n_max + 1)]
        lam = np.array([x ** (-alpha) for x in xn])
        A = 1.0 / (2.0 * lam.sum())
        atoms = {}
        for x, l in zip(xn, lam):
            atoms[x] = A * l
            atoms[-x] = A * l
        return StepLaw((), atoms, cutoff=xn[-1], family=fam,
                       params={"alpha": alpha, "n_max": n_max})
    if fam == "stable_attraction":
        alpha = float(prm.get("alpha", 1.5))
        p = float(prm.get("p", 0.5))
        cutoff = int(prm.get("cutoff", STABLE_CUTOFF))
        if not (1.0 < alpha <= 2.0) or not (0.0 <= p <= 1.0):
            raise LawError("stable_attraction needs alpha in (1,2], p in [0,1]")
        s = alpha + 1.0
        q = 1.0 - p
        z_s, z_a = zeta_value(s), zeta_value(alpha)
        A = 0.999 * 0.9 / (abs(p - q) * z_a + 0.9 * z_s)
        mean_tail = A * (p - q) * z_a
        atoms = {}
        if mean_tail > 0:
            atoms[-1] = mean_tail
        elif mean_tail < 0:
            atoms[1] = -mean_tail
        atoms[0] = 1.0 - A * z_s - abs(mean_tail)
        if atoms[0] <= 0:
            raise LawError("mean-zeroing infeasible without negative mass at 0; "
                           f"needs adjustment {abs(mean_tail):.3f} > available {1.0 - A * z_s:.3f}")
        comps = []
        if p > 0:
            comps.append(TailComp(+1, A * p, s))
        if q > 0:
            comps.append(TailComp(-1, A * q, s))
        return StepLaw(tuple(comps), atoms, cutoff, family=fam,
                       params={"alpha": alpha, "p": p, "cutoff": cutoff})
    if fam == "renewal_logheavy":
        c = float(prm.get("c", 0.45))
        z2 = zeta_value(2.0)
        if not (0.0 < c * z2 < 1.0):
            raise LawError("renewal_logheavy constant out of range")
        return StepLaw((TailComp(+1, c, 2.0),), {0: 1.0 - c * z2}, cutoff=8,
                       family=fam, params={"c": c}, renewal=True)
    raise LawError(f"unknown builtin family {fam!r}")


def censor_transform(law: StepLaw, n_bound: int = 1 << 10) -> StepLaw:
    """Fold both tails below -N and compress everything else to {0, 1}.

    Picks the smallest N with E[|X|; |X|>N] <= P[|X| <= N], then returns the
    law p*(1) = E[|X|;|X|>N], p*(k) = p(k) + p(-k) for k < -N, p*(0) the
    rest; zero mean with no mass at k >= 2.
    """
    if law.renewal:
        raise LawError("censor_transform needs a zero-mean walk law")
    N = None
    for cand in range(1, n_bound + 1):
        e_out = law.side_tail_moment(+1, 1, cand) + law.side_tail_moment(-1, 1, cand)
        p_in = 1.0 - law.mu_plus(cand) - law.mu_minus(cand)
        if e_out <= p_in:
            N = cand
            break
    if N is None:
        raise LawError(f"no admissible censoring level N <= {n_bound}")
    p1 = law.side_tail_moment(+1, 1, N) + law.side_tail_moment(-1, 1, N)
    if p1 <= 0.0:
        raise LawError(f"censor_transform degenerate at N={N}: no mass beyond |X|>N")
    comps = []
    extra = {}
    for c in law.comps:
        start = max(c.start, N + 1)
        comps.append(TailComp(-1, c.w, c.s, start, c.beta))
    # atom mass beyond N folds to the negative side; pair of comps on same side merges fine
    for k, p in law.atoms.items():
        if abs(k) > N and p != 0.0:
            extra[-abs(k)] = extra.get(-abs(k), 0.0) + p
    mass_tail = sum(c.tail_moment(0, 0) for c in comps) + sum(extra.values())
    extra[1] = extra.get(1, 0.0) + p1
    extra[0] = 1.0 - mass_tail - p1
    out = StepLaw(tuple(comps), extra, law.cutoff, family="censored:" + law.family,
                  params=dict(law.params))
    return out


BUILTIN_NAMES = ("simple_pm1", "sparse_spectrum", "stable_attraction", "renewal_logheavy")
