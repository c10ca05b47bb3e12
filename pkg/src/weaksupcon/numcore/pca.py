"""
Principal components via the covariance matrix and cyclic Jacobi rotations.
"""

from dataclasses import dataclass

import numpy as np

from weaksupcon.common.errors import DataError


@dataclass
class PCAResult:
    components: np.ndarray  # 2 x d, rows orthonormal
    projected: np.ndarray  # n x 2
    explained_variance: np.ndarray  # 2 values, descending
    mean: np.ndarray


def jacobi_eigh(matrix, tol=1e-13, max_sweeps=100):
    """
    Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Args:
        matrix (ndarray): Symmetric d x d matrix
        tol (float): Relative off-diagonal Frobenius norm at which to stop
        max_sweeps (int): Upper bound on full sweeps

    Returns:
        tuple: (eigenvalues, eigenvectors as columns), unsorted
    """
    a = np.array(matrix, dtype=np.float64)
    d = a.shape[0]
    v = np.eye(d)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= tol * scale:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) <= 1e-300 or abs(apq) * 1e18 < abs(a[q, q] - a[p, p]):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 if theta == 0 else np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    return np.diag(a).copy(), v


def _fix_sign(component):
    nonzero = np.flatnonzero(np.abs(component) > 1e-12)
    if nonzero.size and component[nonzero[0]] < 0:
        return -component
    return component


def pca_top2(features):
    """
    Top two principal components of the mean-centered features.

    Args:
        features (ndarray): n x d matrix, n >= 2, d >= 2

    Returns:
        PCAResult: Components (first nonzero coordinate positive), projections
            and the two largest covariance eigenvalues
    """
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2 or x.shape[1] < 2:
        raise DataError(f"pca_top2: need at least 2 rows and 2 columns, got shape {list(x.shape)}", shape=list(x.shape))

    mean = x.mean(axis=0)
    centered = x - mean
    covariance = centered.T @ centered / (x.shape[0] - 1)
    values, vectors = jacobi_eigh(covariance)
    order = np.argsort(-values, kind="stable")[:2]
    components = np.stack([_fix_sign(vectors[:, k]) for k in order])
    explained = np.maximum(values[order], 0.0)
    return PCAResult(
        components=components,
        projected=centered @ components.T,
        explained_variance=explained,
        mean=mean,
    )
