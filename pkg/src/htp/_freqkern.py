"""Hot kernels for frequency-side functionals of a packed law.

freq_uv(t, pack) returns (u_plus, u_minus, v_plus, v_minus) with

    u_side(t) = sum_{k>0} p(+-k) (1 - cos kt)        = t * alpha_side(t)
    v_side(t) = sum_{k>0} p(+-k) (kt - sin kt)       = t * beta_side(t)

assembled from explicit atoms plus polylog tail components.  Everything
downstream (psi, alpha, beta, gamma, quadrature integrands) is algebra on
these four arrays, free of subtractive cancellation at small t.

Two implementations: a numba-jitted loop and a vectorized numpy fallback,
selected by htp._backend.
"""
import numpy as np

from ._backend import USE_NUMBA

def _tail_w_numpy(t, s, sing, coef):
    """Complex W(t) for one tail component (vectorized)."""
    if sing[0] == 0.0:
        mag = sing[1] * np.power(t, s - 1.0)
        w = mag * (sing[2] + 1j * sing[3])
    else:
        mm1 = int(sing[1])
        pref = sing[3]
        it_pow = (1j * t) ** mm1
        w = -pref * it_pow * (sing[2] - np.log(t) + 0.5j * np.pi)
    acc = np.zeros_like(t, dtype=np.complex128)
    for k in range(coef.shape[0] - 1, 1, -1):
        acc = (acc + coef[k]) * t
    return w + acc * t


def _atoms_uv_numpy(t, atom_k, atom_p):
    up = np.zeros_like(t)
    um = np.zeros_like(t)
    vp = np.zeros_like(t)
    vm = np.zeros_like(t)
    for k, p in zip(atom_k, atom_p):
        kt = abs(int(k)) * t
        omc = 2.0 * np.sin(0.5 * kt) ** 2
        small = kt < 1e-2
        kts = np.where(small, kt, 0.0)
        tms = np.where(
            small,
            kts ** 3 / 6.0 * (1.0 - kts ** 2 / 20.0 * (1.0 - kts ** 2 / 42.0)),
            kt - np.sin(kt),
        )
        if k > 0:
            up += p * omc
            vp += p * tms
        else:
            um += p * omc
            vm += p * tms
    return up, um, vp, vm


if USE_NUMBA:
    import numba as nb

    @nb.njit(cache=True, fastmath=False)
    def _freq_uv_jit(t, atom_k, atom_p, tail_side, tail_s, tail_scale, tail_sing, tail_coef):
        n = t.shape[0]
        up = np.zeros(n)
        um = np.zeros(n)
        vp = np.zeros(n)
        vm = np.zeros(n)
        ntail = tail_scale.shape[0]
        ncoef = tail_coef.shape[1]
        for j in range(n):
            tj = t[j]
            for i in range(ntail):
                s = tail_s[i]
                if tail_sing[i, 0] == 0.0:
                    mag = tail_sing[i, 1] * tj ** (s - 1.0)
                    wre = mag * tail_sing[i, 2]
                    wim = mag * tail_sing[i, 3]
                else:
                    mm1 = int(tail_sing[i, 1])
                    a = tail_sing[i, 2] - np.log(tj)
                    b = 0.5 * np.pi
                    zre = 1.0
                    zim = 0.0
                    for _ in range(mm1):
                        zre, zim = -zim * tj, zre * tj
                    pref = -tail_sing[i, 3]
                    wre = pref * (zre * a - zim * b)
                    wim = pref * (zre * b + zim * a)
                accre = 0.0
                accim = 0.0
                for k in range(ncoef - 1, 1, -1):
                    cre = tail_coef[i, k].real
                    cim = tail_coef[i, k].imag
                    accre = (accre + cre) * tj
                    accim = (accim + cim) * tj
                wre += accre * tj
                wim += accim * tj
                w = tail_scale[i]
                if tail_side[i] > 0:
                    up[j] += w * wre
                    vp[j] += w * wim
                else:
                    um[j] += w * wre
                    vm[j] += w * wim
            for i in range(atom_k.shape[0]):
                k = atom_k[i]
                p = atom_p[i]
                kt = abs(k) * tj
                sh = np.sin(0.5 * kt)
                omc = 2.0 * sh * sh
                if kt < 1e-2:
                    k2 = kt * kt
                    tms = kt * k2 / 6.0 * (1.0 - k2 / 20.0 * (1.0 - k2 / 42.0))
                else:
                    tms = kt - np.sin(kt)
                if k > 0:
                    up[j] += p * omc
                    vp[j] += p * tms
                else:
                    um[j] += p * omc
                    vm[j] += p * tms
        return up, um, vp, vm


def freq_uv(t, pack):
    """(u+, u-, v+, v-) at points t (1-d float array) for a packed law."""
    t = np.ascontiguousarray(t, dtype=np.float64)
    atom_k, atom_p, tail_side, tail_s, tail_scale, tail_sing, tail_coef = pack
    if USE_NUMBA:
        return _freq_uv_jit(t, atom_k, atom_p, tail_side, tail_s, tail_scale, tail_sing, tail_coef)
    up, um, vp, vm = _atoms_uv_numpy(t, atom_k, atom_p)
    for i in range(tail_scale.shape[0]):
        w = _tail_w_numpy(t, tail_s[i], tail_sing[i], tail_coef[i])
        if tail_side[i] > 0:
            up += tail_scale[i] * w.real
            vp += tail_scale[i] * w.imag
        else:
            um += tail_scale[i] * w.real
            vm += tail_scale[i] * w.imag
    return up, um, vp, vm
