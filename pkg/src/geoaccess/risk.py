"""Composite health-risk index from correlation-matrix PCA.

Variables are standardized to zero mean and unit sample variance, the
correlation matrix is diagonalized with a cyclic Jacobi iteration
(converged until every off-diagonal entry is below 1e-12 in magnitude),
and the index is the explained-variance-weighted sum of the retained
component scores. Components are kept up to a cumulative
explained-variance target and each is sign-aligned so that a larger
index always means a larger overall burden of the input variables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

DEFAULT_VARIANCE_TARGET = 0.75

__all__ = [
    "DEFAULT_VARIANCE_TARGET",
    "PcaModel",
    "RiskIndex",
    "standardize",
    "jacobi_eigh",
    "pca_fit",
    "retained_components",
    "health_risk_index",
    "fit_risk_model",
]


@dataclass(frozen=True)
class PcaModel:
    """Eigenstructure of a correlation matrix.

    ``loadings`` holds orthonormal eigenvectors as columns, ordered by
    descending eigenvalue; within each eigenvector the entry of largest
    magnitude is non-negative (first such entry decides on ties), which
    pins the otherwise arbitrary sign.
    """

    eigenvalues: np.ndarray
    loadings: np.ndarray
    explained_ratio: np.ndarray
    columns: list | None = None
    means: np.ndarray | None = None
    stds: np.ndarray | None = None


@dataclass(frozen=True)
class RiskIndex:
    scores: np.ndarray
    retained_components: int
    captured_variance: float


def standardize(matrix, columns=None):
    """Column-wise standardization to mean 0 and sample (n-1) std 1.

    Returns (standardized, means, stds). A constant column cannot be
    standardized and is rejected by name (or index when unnamed).
    """
    x = np.asarray(matrix, dtype=float)
    if x.ndim != 2:
        raise ValidationError(f"expected a 2-d matrix, got shape {x.shape}")
    if x.shape[0] < 2:
        raise ValidationError("standardization requires at least 2 rows")
    if not np.all(np.isfinite(x)):
        raise ValidationError("standardization requires finite values")
    means = x.mean(axis=0)
    stds = x.std(axis=0, ddof=1)
    for j, s in enumerate(stds):
        if s == 0.0:
            name = columns[j] if columns is not None else j
            raise ValidationError(f"constant column {name!r} cannot be standardized")
    return (x - means) / stds, means, stds


def jacobi_eigh(matrix, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until every off-diagonal magnitude drops below ``tol``.
    Returns (eigenvalues, eigenvectors-as-columns), unsorted.
    """
    a = np.array(matrix, dtype=float, copy=True)
    p = a.shape[0]
    if a.shape != (p, p):
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, atol=1e-10):
        raise ValidationError("jacobi_eigh requires a symmetric matrix")
    v = np.eye(p)
    if p == 1:
        return np.array([a[0, 0]]), v
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a))).max()
        if off < tol:
            break
        for i in range(p - 1):
            for j in range(i + 1, p):
                aij = a[i, j]
                if aij == 0.0:
                    continue
                theta = (a[j, j] - a[i, i]) / (2.0 * aij)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_i = a[:, i].copy()
                col_j = a[:, j].copy()
                a[:, i] = c * col_i - s * col_j
                a[:, j] = s * col_i + c * col_j
                row_i = a[i, :].copy()
                row_j = a[j, :].copy()
                a[i, :] = c * row_i - s * row_j
                a[j, :] = s * row_i + c * row_j
                a[i, j] = 0.0
                a[j, i] = 0.0
                vi = v[:, i].copy()
                vj = v[:, j].copy()
                v[:, i] = c * vi - s * vj
                v[:, j] = s * vi + c * vj
    else:
        raise ValidationError("jacobi_eigh failed to converge")
    return np.diag(a).copy(), v


def pca_fit(standardized, columns=None, means=None, stds=None) -> PcaModel:
    """Fit PCA on an already-standardized matrix via its correlation matrix.

    Eigenvalues come back in descending order with orthonormal, sign-fixed
    eigenvectors; explained ratios are eigenvalues over their sum (which
    equals the variable count, the trace of a correlation matrix).
    """
    z = np.asarray(standardized, dtype=float)
    if z.ndim != 2 or z.shape[0] < 2:
        raise ValidationError(f"pca_fit requires a 2-d matrix with >= 2 rows, got {z.shape}")
    if not np.all(np.isfinite(z)):
        raise ValidationError("pca_fit requires finite values")
    n = z.shape[0]
    corr = (z.T @ z) / (n - 1.0)
    corr = 0.5 * (corr + corr.T)
    eigenvalues, vectors = jacobi_eigh(corr)
    eigenvalues = np.where(eigenvalues < 0.0, 0.0, eigenvalues)
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vectors = vectors[:, order]
    for c in range(vectors.shape[1]):
        lead = int(np.argmax(np.abs(vectors[:, c])))
        if vectors[lead, c] < 0.0:
            vectors[:, c] = -vectors[:, c]
    explained = eigenvalues / eigenvalues.sum()
    return PcaModel(
        eigenvalues=eigenvalues,
        loadings=vectors,
        explained_ratio=explained,
        columns=list(columns) if columns is not None else None,
        means=None if means is None else np.asarray(means, dtype=float),
        stds=None if stds is None else np.asarray(stds, dtype=float),
    )


def retained_components(explained_ratio, target: float):
    """Minimal component count whose cumulative explained share meets target."""
    if not 0.0 < target <= 1.0:
        raise ValidationError(f"variance target must be in (0, 1], got {target!r}")
    cum = np.cumsum(np.asarray(explained_ratio, dtype=float))
    # A hair of tolerance so a cumulative sum that is 1.0 up to rounding
    # still satisfies a target of exactly 1.0.
    hits = np.nonzero(cum >= target - 1e-12)[0]
    if hits.size == 0:
        raise ValidationError("explained ratios never reach the variance target")
    m = int(hits[0]) + 1
    return m, float(cum[m - 1])


def health_risk_index(model: PcaModel, standardized, target: float = DEFAULT_VARIANCE_TARGET) -> RiskIndex:
    """Composite index: variance-weighted sum of aligned component scores.

    Each retained component is flipped, when needed, so its scores
    correlate non-negatively with the zone-wise mean of the standardized
    inputs; a zero correlation keeps the fitted orientation. Higher index
    values therefore mean higher overall prevalence.
    """
    z = np.asarray(standardized, dtype=float)
    if z.ndim != 2 or z.shape[1] != model.loadings.shape[0]:
        raise ValidationError(
            f"matrix shape {z.shape} does not match the fitted model "
            f"({model.loadings.shape[0]} variables)"
        )
    m, captured = retained_components(model.explained_ratio, target)
    scores_by_component = z @ model.loadings[:, :m]
    overall = z.mean(axis=1)
    overall_centered = overall - overall.mean()
    index = np.zeros(z.shape[0])
    for c in range(m):
        t = scores_by_component[:, c]
        cov = float((t - t.mean()) @ overall_centered)
        sign = -1.0 if cov < 0.0 else 1.0
        index += float(model.explained_ratio[c]) * sign * t
    return RiskIndex(scores=index, retained_components=m, captured_variance=captured)


def fit_risk_model(matrix, columns=None):
    """Standardize a raw matrix and fit the PCA model in one step."""
    z, means, stds = standardize(matrix, columns=columns)
    model = pca_fit(z, columns=columns, means=means, stds=stds)
    return model, z
