"""Spatial association statistics over point features.

Three building blocks:

* binary spatial weights, either k-nearest-neighbor or fixed distance
  band (the "star" variants include the focal feature itself);
* Getis-Ord Gi* hot/cold-spot z-scores with fixed-threshold or
  Benjamini-Hochberg (FDR) confidence classes;
* a local bivariate association measure: the Pearson correlation of two
  variables over each feature's neighborhood, tested by conditional
  permutation (hold x, globally permute y with seeded, per-permutation
  random streams so results never depend on scheduling).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .errors import ValidationError
from .geo import EARTH_RADIUS_MILES
from .parallel import map_indexed

HOT_99, HOT_95, HOT_90 = "HotSpot99", "HotSpot95", "HotSpot90"
COLD_99, COLD_95, COLD_90 = "ColdSpot99", "ColdSpot95", "ColdSpot90"
NOT_SIGNIFICANT = "NotSignificant"

POSITIVE = "PositiveSignificant"
NEGATIVE = "NegativeSignificant"
UNDEFINED = "Undefined"

# Two-sided confidence cutoffs for 90/95/99 percent.
_Z_CUTS = ((2.576, HOT_99, COLD_99), (1.960, HOT_95, COLD_95), (1.645, HOT_90, COLD_90))
_FDR_ALPHAS = ((0.01, HOT_99, COLD_99), (0.05, HOT_95, COLD_95), (0.10, HOT_90, COLD_90))

__all__ = [
    "SpatialWeights",
    "HotSpotResult",
    "BivariateResult",
    "build_weights",
    "getis_ord_gi_star",
    "classify_hotspots",
    "benjamini_hochberg",
    "local_bivariate",
]


@dataclass(frozen=True)
class SpatialWeights:
    """Binary neighbor structure (every listed neighbor has weight 1.0).

    ``neighbors[i]`` holds ascending feature indices and includes ``i``
    itself exactly when ``include_self`` is set. ``isolated`` flags
    fixed-band features with no neighbor besides themselves.
    """

    scheme: str
    param: float
    ids: list
    neighbors: list
    include_self: bool
    isolated: np.ndarray

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True)
class HotSpotResult:
    ids: list
    z: np.ndarray
    p: np.ndarray
    category: list | None = None


@dataclass(frozen=True)
class BivariateResult:
    ids: list
    local_r: np.ndarray
    pseudo_p: np.ndarray
    category: list
    permutations: int
    seed: int


def _pairwise_miles(lats, lons) -> np.ndarray:
    """Full haversine distance matrix in miles, vectorized."""
    phi = np.radians(np.asarray(lats, dtype=float))
    lam = np.radians(np.asarray(lons, dtype=float))
    dphi = 0.5 * (phi[:, None] - phi[None, :])
    dlam = 0.5 * (lam[:, None] - lam[None, :])
    s = np.sin(dphi) ** 2 + np.cos(phi)[:, None] * np.cos(phi)[None, :] * np.sin(dlam) ** 2
    return 2.0 * EARTH_RADIUS_MILES * np.arcsin(np.minimum(1.0, np.sqrt(s)))


def build_weights(points, scheme: str, include_self: bool, k: int | None = None,
                  band: float | None = None) -> SpatialWeights:
    """Construct binary spatial weights over (id, GeoPoint) features.

    "knn" takes the k nearest other features by great-circle distance,
    ties broken by id; "fixed_band" takes every other feature within the
    band, boundary included (the relation is symmetric by construction).
    A fixed-band feature with no in-band neighbor is flagged isolated,
    not rejected.
    """
    ids = [pid for pid, _ in points]
    pts = [pt for _, pt in points]
    n = len(ids)
    if n < 2:
        raise ValidationError(f"spatial weights require >= 2 features, got {n}")
    if len(set(ids)) != n:
        raise ValidationError("duplicate feature ids in weights input")
    dist = _pairwise_miles([p.lat for p in pts], [p.lon for p in pts])

    neighbors: list[np.ndarray] = []
    isolated = np.zeros(n, dtype=bool)
    if scheme == "knn":
        if k is None or k < 1:
            raise ValidationError(f"knn weights require k >= 1, got {k!r}")
        if k >= n:
            raise ValidationError(f"knn k={k} must be smaller than the feature count {n}")
        param = float(k)
        for i in range(n):
            others = [j for j in range(n) if j != i]
            others.sort(key=lambda j: (dist[i, j], ids[j]))
            chosen = others[:k]
            if include_self:
                chosen.append(i)
            neighbors.append(np.array(sorted(chosen), dtype=np.intp))
    elif scheme == "fixed_band":
        if band is None or not band > 0:
            raise ValidationError(f"fixed_band weights require band > 0, got {band!r}")
        param = float(band)
        for i in range(n):
            chosen = [j for j in range(n) if j != i and dist[i, j] <= band]
            if not chosen:
                isolated[i] = True
            if include_self:
                chosen.append(i)
            neighbors.append(np.array(sorted(chosen), dtype=np.intp))
    else:
        raise ValidationError(f"unknown weights scheme {scheme!r}; expected 'knn' or 'fixed_band'")
    return SpatialWeights(
        scheme=scheme, param=param, ids=list(ids), neighbors=neighbors,
        include_self=include_self, isolated=isolated,
    )


def getis_ord_gi_star(values, weights: SpatialWeights) -> HotSpotResult:
    """Getis-Ord Gi* z-scores and two-sided normal p-values.

    For feature i with binary weights over its neighborhood (self
    included; building the weights without the focal feature is
    rejected),

        z_i = (S1_i - mean * W_i) / (S * sqrt((n * W_i - W_i^2) / (n - 1)))

    where S1_i sums the values over the neighborhood, W_i counts it, and
    S is the population standard deviation of all values. A degenerate
    denominator (constant field, or a neighborhood spanning everything)
    yields z = 0 and p = 1 for that feature.
    """
    if not weights.include_self:
        raise ValidationError("Gi* requires weights built with include_self=True")
    x = np.asarray(list(values), dtype=float)
    n = len(weights)
    if x.size != n:
        raise ValidationError(f"value count {x.size} does not match feature count {n}")
    if n < 3:
        raise ValidationError(f"Gi* requires at least 3 features, got {n}")
    if not np.all(np.isfinite(x)):
        raise ValidationError("Gi* requires finite values")
    xbar = float(x.mean())
    s = math.sqrt(max(float((x * x).mean()) - xbar * xbar, 0.0))
    z = np.zeros(n)
    if s > 0.0:
        for i, nbrs in enumerate(weights.neighbors):
            w = float(len(nbrs))
            bracket = (n * w - w * w) / (n - 1.0)
            if bracket <= 0.0:
                continue
            s1 = float(x[nbrs].sum())
            z[i] = (s1 - xbar * w) / (s * math.sqrt(bracket))
    p = erfc(np.abs(z) / math.sqrt(2.0))
    return HotSpotResult(ids=list(weights.ids), z=z, p=p)


def benjamini_hochberg(p_values, alpha: float) -> np.ndarray:
    """Benjamini-Hochberg step-up rejections at FDR level alpha."""
    p = np.asarray(p_values, dtype=float)
    m = p.size
    order = np.argsort(p, kind="stable")
    thresholds = alpha * np.arange(1, m + 1) / m
    below = p[order] <= thresholds
    reject = np.zeros(m, dtype=bool)
    if below.any():
        cutoff = int(np.max(np.nonzero(below)[0])) + 1
        reject[order[:cutoff]] = True
    return reject


def classify_hotspots(result: HotSpotResult, fdr: bool = False) -> HotSpotResult:
    """Assign confidence categories to Gi* results.

    Without FDR, categories follow the fixed z cutoffs 1.645 / 1.960 /
    2.576. With FDR, Benjamini-Hochberg runs at the 0.10 / 0.05 / 0.01
    levels and each feature takes the strictest level at which it is
    rejected, capped at its fixed-threshold class so the correction can
    only ever demote.
    """
    n = len(result.ids)
    fixed_level = np.zeros(n, dtype=int)  # 0 none, 1=90, 2=95, 3=99
    for rank, (cut, _, _) in enumerate(reversed(_Z_CUTS), start=1):
        fixed_level[np.abs(result.z) >= cut] = rank
    level = fixed_level
    if fdr:
        fdr_level = np.zeros(n, dtype=int)
        for rank, (alpha, _, _) in enumerate(reversed(_FDR_ALPHAS), start=1):
            fdr_level[benjamini_hochberg(result.p, alpha)] = rank
        level = np.minimum(fdr_level, fixed_level)
    names_hot = {1: HOT_90, 2: HOT_95, 3: HOT_99}
    names_cold = {1: COLD_90, 2: COLD_95, 3: COLD_99}
    category = []
    for zi, li in zip(result.z, level):
        if li == 0:
            category.append(NOT_SIGNIFICANT)
        else:
            category.append(names_hot[int(li)] if zi > 0 else names_cold[int(li)])
    return HotSpotResult(ids=result.ids, z=result.z, p=result.p, category=category)


def _neighborhoods(weights: SpatialWeights):
    """Per-feature neighborhood index arrays: neighbors plus the feature."""
    hoods = []
    for i, nbrs in enumerate(weights.neighbors):
        hood = set(int(j) for j in nbrs)
        hood.add(i)
        hoods.append(np.array(sorted(hood), dtype=np.intp))
    return hoods


def local_bivariate(
    x,
    y,
    weights: SpatialWeights,
    permutations: int = 199,
    seed: int = 42,
    min_neighbors: int = 8,
    alpha: float = 0.05,
    workers: int = 1,
) -> BivariateResult:
    """Neighborhood Pearson correlation with conditional permutation test.

    For each feature, ``local_r`` is the correlation of (x, y) over the
    feature's neighborhood (itself included). Significance holds x fixed
    and globally permutes y; each permutation draws its own generator
    from (seed, permutation index), so identical seeds give identical
    results at any worker count. The pseudo p-value uses the
    (count + 1) / (permutations + 1) convention and can never be zero.

    A feature is Undefined when its neighborhood is smaller than
    ``min_neighbors`` or either variable is constant there (its
    pseudo p-value is reported as 1). A permutation replicate whose
    y-variance degenerates contributes a correlation of zero.
    """
    xv = np.asarray(list(x), dtype=float)
    yv = np.asarray(list(y), dtype=float)
    n = len(weights)
    if xv.size != n or yv.size != n:
        raise ValidationError(
            f"variable lengths ({xv.size}, {yv.size}) do not match feature count {n}"
        )
    if not (np.all(np.isfinite(xv)) and np.all(np.isfinite(yv))):
        raise ValidationError("local_bivariate requires finite values")
    if permutations < 19:
        raise ValidationError(f"permutations must be >= 19, got {permutations}")
    if min_neighbors < 2:
        raise ValidationError(f"min_neighbors must be >= 2, got {min_neighbors}")

    hoods = _neighborhoods(weights)
    sizes = np.array([h.size for h in hoods], dtype=float)
    max_m = max(h.size for h in hoods)
    nbr = np.zeros((n, max_m), dtype=np.intp)
    mask = np.zeros((n, max_m))
    for i, h in enumerate(hoods):
        nbr[i, : h.size] = h
        mask[i, : h.size] = 1.0

    xg = xv[nbr] * mask
    sum_x = xg.sum(axis=1)
    sum_xx = (xg * xg).sum(axis=1)
    sxx = sizes * sum_xx - sum_x * sum_x

    def correlations(yvec: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Per-feature r plus a validity mask (y-variance > 0)."""
        yg = yvec[nbr] * mask
        sum_y = yg.sum(axis=1)
        sum_yy = (yg * yg).sum(axis=1)
        sum_xy = (xg * yg).sum(axis=1)
        syy = sizes * sum_yy - sum_y * sum_y
        denom2 = sxx * syy
        valid = (sxx > 0.0) & (syy > 0.0)
        r = np.zeros(n)
        np.divide(
            sizes * sum_xy - sum_x * sum_y,
            np.sqrt(np.where(denom2 > 0.0, denom2, 1.0)),
            out=r,
            where=valid,
        )
        return np.clip(r, -1.0, 1.0), valid

    r_obs, y_valid = correlations(yv)
    defined = (sizes >= min_neighbors) & (sxx > 0.0) & y_valid
    abs_obs = np.abs(r_obs)

    def one_permutation(m: int) -> np.ndarray:
        rng = np.random.default_rng([seed, m])
        r_perm, _ = correlations(yv[rng.permutation(n)])
        return (np.abs(r_perm) >= abs_obs).astype(np.int64)

    counts_per_perm = map_indexed(one_permutation, range(permutations), workers=workers)
    exceed = np.zeros(n, dtype=np.int64)
    for c in counts_per_perm:
        exceed += c

    pseudo_p = np.ones(n)
    pseudo_p[defined] = (exceed[defined] + 1.0) / (permutations + 1.0)
    local_r = np.where(defined, r_obs, np.nan)
    category = []
    for i in range(n):
        if not defined[i]:
            category.append(UNDEFINED)
        elif pseudo_p[i] <= alpha and r_obs[i] > 0:
            category.append(POSITIVE)
        elif pseudo_p[i] <= alpha and r_obs[i] < 0:
            category.append(NEGATIVE)
        else:
            category.append(NOT_SIGNIFICANT)
    return BivariateResult(
        ids=list(weights.ids), local_r=local_r, pseudo_p=pseudo_p,
        category=category, permutations=permutations, seed=seed,
    )
