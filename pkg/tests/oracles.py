"""Floating-point second routes, independent of the exact code paths."""
import numpy as np


def float_basis(A) -> np.ndarray:
    return A.num.astype(float) / A.den


def float_ad(A) -> np.ndarray:
    """ad matrices from matrix commutators and least squares."""
    B = float_basis(A)
    d = B.shape[0]
    flat = B.reshape(d, -1).T
    ads = np.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            c = B[i] @ B[j] - B[j] @ B[i]
            coef, *_ = np.linalg.lstsq(flat, c.ravel(), rcond=None)
            ads[i][:, j] = coef
    return ads


def float_killing_signature(A, tol: float = 1e-8) -> tuple[int, int, int]:
    ads = float_ad(A)
    d = ads.shape[0]
    K = np.array([[np.trace(ads[i] @ ads[j]) for j in range(d)] for i in range(d)])
    ev = np.linalg.eigvalsh((K + K.T) / 2)
    scale = max(1.0, np.abs(ev).max())
    return (int((ev > tol * scale).sum()), int((ev < -tol * scale).sum()),
            int((np.abs(ev) <= tol * scale).sum()))


def float_signature(M, tol: float = 1e-9) -> tuple[int, int, int]:
    ev = np.linalg.eigvalsh(np.asarray(M, dtype=float))
    scale = max(1.0, np.abs(ev).max())
    return (int((ev > tol * scale).sum()), int((ev < -tol * scale).sum()),
            int((np.abs(ev) <= tol * scale).sum()))


def fmpq_to_float(M) -> np.ndarray:
    return np.array([[float(int(x.p)) / float(int(x.q)) for x in row] for row in M.tolist()])
