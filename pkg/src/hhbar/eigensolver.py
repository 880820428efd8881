"""Generalized symmetric eigensolver with canonical orthogonalization.

The overlap is diagonalized, eigenvectors with s_k < tau * s_max are dropped and
the remaining ones are scaled to an orthonormal set X.  With ``extended`` set,
X is refined against the extended-precision overlap (X <- X V w^-1/2 where
X^T S X = V w V^T) and both reduction products are accumulated in longdouble;
this is what keeps spurious states out of the near-threshold region when
cond(S) ~ 1e13.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class BasisCollapseError(ArithmeticError):
    """No overlap eigenvector survives the cutoff."""


@dataclass(frozen=True)
class ConditioningPolicy:
    tau: float = 1e-12
    extended: bool = True
    refine_steps: int = 2

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError("tau must be non-negative")
        if self.refine_steps < 0:
            raise ValueError("refine_steps must be non-negative")


@dataclass
class GeneralizedEigenResult:
    eigenvalues: np.ndarray
    coefficient_vectors: np.ndarray  # columns, in the working precision
    retained_dimension: int
    overlap_condition: float
    dropped_count: int


def _check_symmetric(M, name):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square")
    if not np.array_equal(M, M.T):
        raise ValueError(f"{name} is not symmetric")


def _sym64(M):
    M = np.asarray(M, dtype=float)
    return 0.5 * (M + M.T)


def solve(H, S, policy: ConditioningPolicy = ConditioningPolicy()) -> GeneralizedEigenResult:
    """Solve H c = E S c on the well-conditioned part of span(S)."""
    _check_symmetric(H, "H")
    _check_symmetric(S, "S")
    if H.shape != S.shape:
        raise ValueError("H and S differ in shape")
    dtype = np.longdouble if policy.extended else np.float64
    H = np.asarray(H, dtype=dtype)
    S = np.asarray(S, dtype=dtype)

    s, U = np.linalg.eigh(np.asarray(S, dtype=float))
    s_max = s[-1]
    if not s_max > 0:
        raise BasisCollapseError("overlap matrix has no positive eigenvalue")
    keep = s > policy.tau * s_max
    if not keep.any():
        raise BasisCollapseError("all overlap eigenvalues fall below the cutoff")
    cond = float(s_max / s[0]) if s[0] > 0 else float("inf")

    X = (U[:, keep] / np.sqrt(s[keep])).astype(dtype)
    if policy.extended:
        for _ in range(policy.refine_steps):
            w, V = np.linalg.eigh(_sym64(X.T @ S @ X))
            if w[0] <= 0:
                raise BasisCollapseError("refined overlap lost positive definiteness")
            X = X @ (V / np.sqrt(w)).astype(dtype)

    e, C = np.linalg.eigh(_sym64(X.T @ H @ X))
    coeffs = X @ C.astype(dtype)

    dominant = np.argmax(np.abs(np.asarray(coeffs, dtype=float)), axis=0)
    order = np.lexsort((dominant, e))
    return GeneralizedEigenResult(
        eigenvalues=e[order],
        coefficient_vectors=coeffs[:, order],
        retained_dimension=int(keep.sum()),
        overlap_condition=cond,
        dropped_count=int((~keep).sum()),
    )


def residual_check(H, S, result: GeneralizedEigenResult) -> float:
    """max_k ||(H - E_k S) c_k|| / (||H|| ||c_k||)."""
    c = result.coefficient_vectors
    dtype = c.dtype
    H = np.asarray(H, dtype=dtype)
    S = np.asarray(S, dtype=dtype)
    E = np.asarray(result.eigenvalues, dtype=dtype)
    R = H @ c - (S @ c) * E[None, :]
    h_norm = np.linalg.norm(np.asarray(H, dtype=float), 2) or 1.0  # H = 0: absolute residual
    num = np.sqrt((np.asarray(R, dtype=float) ** 2).sum(axis=0))
    den = h_norm * np.sqrt((np.asarray(c, dtype=float) ** 2).sum(axis=0))
    return float(np.max(num / den))


def s_orthonormality_error(S, result: GeneralizedEigenResult) -> float:
    c = result.coefficient_vectors
    G = c.T @ np.asarray(S, dtype=c.dtype) @ c
    return float(np.max(np.abs(np.asarray(G, dtype=float) - np.eye(G.shape[0]))))
