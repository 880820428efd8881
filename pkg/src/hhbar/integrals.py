"""Closed-form radial matrix elements over the oscillating-Gaussian basis.

Each basis function is rewritten as N R^l sum_s c_s exp(-z_s R^2) with complex
exponents z = nu (1 -/+ i a).  Every overlap, kinetic and potential element
then reduces to Gaussian moments

    M(m, z) = int_0^inf R^m exp(-z R^2) dR = Gamma((m+1)/2) / (2 z^((m+1)/2)).

Assembly runs in ``numpy.longdouble`` by default; the overlap matrix of a
240-function ladder has condition ~1e13 and double precision elements are
not accurate enough for the near-threshold states.
"""

from __future__ import annotations

import numpy as np

from .basis import BasisFunction, Kind, normalization
from .potential import PotentialModel

# 36 digits, enough for any float format numpy exposes
_PI = "3.14159265358979323846264338327950288"

IMAG_TOL = 1e-13


class DivergentIntegralError(ValueError):
    pass


def _real_dtype(z):
    z = np.asarray(z)
    if z.dtype in (np.longdouble, np.clongdouble):
        return np.longdouble
    return np.float64


def _gamma_half(m1: int, dtype):
    """Gamma(m1 / 2) for positive integer m1, exact recurrence in ``dtype``."""
    if m1 % 2 == 0:
        g, x = dtype(1), dtype(1)
    else:
        g, x = np.sqrt(dtype(_PI)), dtype(0.5)
    target = dtype(m1) / 2
    while x < target:
        g = g * x
        x = x + 1
    return g


def moment(m: int, z):
    """Principal-branch value of int_0^inf R^m exp(-z R^2) dR, Re z > 0."""
    if m < 0:
        raise ValueError("moment order must be non-negative")
    z = np.asarray(z)
    if not np.iscomplexobj(z):
        z = z.astype(np.clongdouble if z.dtype == np.longdouble else complex)
    if np.any(z.real <= 0):
        raise DivergentIntegralError("moment requires Re(z) > 0")
    dtype = _real_dtype(z)
    k = (m + 1) // 2
    zp = z**k if k else np.ones_like(z)
    if (m + 1) % 2:
        zp = zp * np.sqrt(z)
    out = _gamma_half(m + 1, dtype) / (2 * zp)
    return out if out.ndim else out[()]


def _components(kinds, nus, alpha_osc, dtype):
    """Complex exponents and weights, shape (n, 2), for each basis function."""
    cdtype = np.clongdouble if dtype == np.longdouble else complex
    nus = np.asarray(nus, dtype=dtype)
    a = dtype(alpha_osc)
    z = np.empty((len(nus), 2), dtype=cdtype)
    z[:, 0] = nus * (1 - 1j * a)
    z[:, 1] = nus * (1 + 1j * a)
    # cos x = (e^{ix} + e^{-ix})/2,  sin x = (e^{ix} - e^{-ix})/(2i); e^{ix} pairs with z[:, 0]
    c = np.empty((len(nus), 2), dtype=cdtype)
    is_cos = np.array([Kind(k) is Kind.COS for k in kinds])
    c[:, 0] = np.where(is_cos, cdtype(0.5), cdtype(-0.5j))
    c[:, 1] = np.where(is_cos, cdtype(0.5), cdtype(0.5j))
    return z, c


def _to_real(M, name):
    resid = np.abs(M.imag)
    bound = IMAG_TOL * (np.abs(M.real) + 1)
    if np.any(resid > bound):
        raise ArithmeticError(f"{name}: imaginary residue {resid.max():.3e} above tolerance")
    return M.real


def _symmetrize(M):
    # copy the upper triangle down so the matrix is exactly symmetric
    iu = np.triu_indices(M.shape[0], 1)
    out = M.copy()
    out[(iu[1], iu[0])] = M[iu]
    return out


def _log1p_small(u):
    """Complex log(1 + u) accurate for small |u| (numpy's complex log1p is not).

    Uses log1p(u) = 2 atanh(s), s = u / (2 + u), summed as an odd power series
    where |u| < 0.1; elsewhere log(1 + u) loses at most one digit.
    """
    out = np.log(1 + u)
    small = np.abs(u) < 0.1
    if np.any(small):
        s = u[small] / (2 + u[small])
        s2 = s * s
        term, acc = s, s.copy()
        eps = np.finfo(np.abs(s).dtype).eps
        for k in range(3, 61, 2):
            term = term * s2
            acc = acc + term / k
            if np.all(np.abs(term) <= eps * np.abs(acc)):
                break
        out[small] = 2 * acc
    return out


class _PairTable:
    """Broadcast tables over (i, j, s) for two lists of functions.

    The sum over the components t of the right-hand function is done
    explicitly.  For a sine function the two terms nearly cancel whenever its
    exponent is small next to the left-hand one (or next to a potential
    shift), so that difference is evaluated as
    Phi_0 - Phi_1 = -Phi_0 expm1(-p log1p(u)).  Assembly keeps the upper
    triangle, where the right-hand function is always the broader one.
    """

    def __init__(self, left, right, dtype):
        self.dtype = dtype
        l = {f.l for f in left} | {f.l for f in right}
        if len(l) != 1:
            raise ValueError("matrix elements need functions of a single angular momentum")
        self.l = l.pop()
        alphas = {f.alpha_osc for f in left} | {f.alpha_osc for f in right}
        if len(alphas) != 1:
            raise ValueError("functions use different oscillation ratios")
        a = alphas.pop()
        zi, ci = _components([f.kind for f in left], [f.nu for f in left], a, dtype)
        zj, _ = _components([f.kind for f in right], [f.nu for f in right], a, dtype)
        self.zi = zi[:, None, :]
        self.ci = ci[:, None, :]
        self.zj0 = zj[None, :, 0, None]
        self.zj1 = zj[None, :, 1, None]
        nu_j = np.array([f.nu for f in right], dtype=dtype)
        # zj0 - zj1 = -2 i a nu, formed directly rather than by subtraction
        self.dzj = (-2j * dtype(a) * nu_j)[None, :, None]
        sin_j = np.array([Kind(f.kind) is Kind.SIN for f in right])
        self.sin_cols = np.flatnonzero(sin_j)
        self.cos_cols = np.flatnonzero(~sin_j)
        ni = np.array([normalization(f.kind, f.nu, f.l, a, dtype) for f in left], dtype=dtype)
        nj = np.array([normalization(f.kind, f.nu, f.l, a, dtype) for f in right], dtype=dtype)
        self.nn = ni[:, None] * nj[None, :]

    def integral(self, m, shift=0.0, weight=None):
        """sum_{s,t} c_s c_t W M(m, z_s + z_t + shift), normalized.

        ``weight`` is None (W = 1), "prod" (W = z_s z_t) or "sum" (W = z_s + z_t).
        """
        if weight not in (None, "prod", "sum"):
            raise ValueError(f"unknown weight {weight!r}")
        shift = self.dtype(shift)
        zi = self.zi
        inner = np.empty(zi.shape[:1] + self.zj0.shape[1:2] + zi.shape[2:], dtype=zi.dtype)
        for cols, is_sin in ((self.cos_cols, False), (self.sin_cols, True)):
            if cols.size == 0:
                continue
            zj0, zj1 = self.zj0[:, cols], self.zj1[:, cols]
            Z0 = zi + zj0 + shift
            phi0 = moment(m, Z0)
            if weight is None:
                w0, w1 = 1, 1
            elif weight == "prod":
                w0, w1 = zi * zj0, zi * zj1
            else:
                w0, w1 = zi + zj0, zi + zj1
            if not is_sin:
                inner[:, cols] = 0.5 * (w0 * phi0 + w1 * moment(m, zi + zj1 + shift))
                continue
            dzj = self.dzj[:, cols]
            dw = 0 if weight is None else (zi * dzj if weight == "prod" else dzj)
            p = self.dtype(m + 1) / 2
            dphi = -phi0 * np.expm1(-p * _log1p_small(-dzj / Z0))
            inner[:, cols] = -0.5j * (dw * phi0 + w1 * dphi)
        return (self.ci * inner).sum(axis=2) * self.nn

    def overlap(self):
        return self.integral(2 * self.l + 2)

    def kinetic(self, mu_n):
        # (1/2mu) int g_i' g_j' R^2 dR + l(l+1)/(2mu) int g_i g_j dR; with
        # d/dR[R^l e^{-zR^2}] = (l R^{l-1} - 2 z R^{l+1}) e^{-zR^2}
        l = self.l
        out = 4 * self.integral(2 * l + 4, weight="prod")
        if l > 0:
            out = out - 2 * l * self.integral(2 * l + 2, weight="sum")
            out = out + (l * l + l * (l + 1)) * self.integral(2 * l)
        return out / (2 * self.dtype(mu_n))

    def potential(self, model: PotentialModel):
        l = self.l
        out = 0
        for coef, power, expo in model.terms():
            out = out + self.dtype(coef) * self.integral(2 * l + 2 + power, expo)
        return out


def _dtype(extended: bool):
    return np.longdouble if extended else np.float64


def _pair(fi, fj, extended):
    # elements are symmetric; keep the broader function on the right
    if fi.nu < fj.nu:
        fi, fj = fj, fi
    return _PairTable([fi], [fj], _dtype(extended))


def overlap_element(fi: BasisFunction, fj: BasisFunction, extended: bool = True) -> float:
    t = _pair(fi, fj, extended)
    return float(_to_real(t.overlap(), "overlap")[0, 0])


def kinetic_element(fi: BasisFunction, fj: BasisFunction, mu_n: float, extended: bool = True) -> float:
    if mu_n <= 0:
        raise ValueError("reduced mass must be positive")
    t = _pair(fi, fj, extended)
    return float(_to_real(t.kinetic(mu_n), "kinetic")[0, 0])


def potential_element(fi: BasisFunction, fj: BasisFunction, model: PotentialModel,
                      extended: bool = True) -> float:
    t = _pair(fi, fj, extended)
    return float(_to_real(t.potential(model), "potential")[0, 0])


def assemble(functions: list[BasisFunction], model: PotentialModel, mu_n: float,
             extended: bool = True):
    """Overlap, kinetic and potential matrices (exactly symmetric).

    Returned arrays are ``longdouble`` when ``extended`` is set, else float64.
    """
    t = _PairTable(functions, functions, _dtype(extended))
    S = _symmetrize(_to_real(t.overlap(), "overlap"))
    T = _symmetrize(_to_real(t.kinetic(mu_n), "kinetic"))
    V = _symmetrize(_to_real(t.potential(model), "potential"))
    return S, T, V


def write_matrix_binary(path, M) -> None:
    """Row-major float64 dump preceded by two little-endian int64 dimensions."""
    M = np.ascontiguousarray(np.asarray(M, dtype="<f8"))
    with open(path, "wb") as fh:
        np.array(M.shape, dtype="<i8").tofile(fh)
        M.tofile(fh)


def read_matrix_binary(path) -> np.ndarray:
    with open(path, "rb") as fh:
        shape = tuple(np.fromfile(fh, dtype="<i8", count=2))
        data = np.fromfile(fh, dtype="<f8")
    return data.reshape(shape)
