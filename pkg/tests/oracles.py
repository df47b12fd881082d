"""Independent reference implementations used as test oracles.

Everything here is written directly from the defining formulas, separate
from the package code paths it checks. Values frozen into tests were
produced by these same routines (or scipy) before the build.
"""

import math

import numpy as np

R_MILES = 3958.7613


def ref_haversine(lat1, lon1, lat2, lon2):
    p1, l1, p2, l2 = map(math.radians, (lat1, lon1, lat2, lon2))
    s = math.sin((p2 - p1) / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin((l2 - l1) / 2) ** 2
    return 2 * R_MILES * math.asin(min(1.0, math.sqrt(s)))


def ref_impedance(d, d0):
    if d > d0:
        return 0.0
    return math.exp(-0.5 * (d / d0) ** 2) - math.exp(-0.5)


def ref_direct_accessibility(zones, facilities, d0):
    """Single-pass evaluation of the combined accessibility formula.

    zones: list of (zone_id, lat, lon, patients); facilities: list of
    (facility_id, lat, lon, beds). No intermediate ratio table.
    """
    denominators = {}
    for fid, flat, flon, _ in facilities:
        total = 0.0
        for _, zlat, zlon, patients in zones:
            d = ref_haversine(flat, flon, zlat, zlon)
            if d <= d0:
                total += patients * ref_impedance(d, d0)
        denominators[fid] = total
    scores = {}
    for zid, zlat, zlon, _ in zones:
        acc = 0.0
        for fid, flat, flon, beds in facilities:
            if denominators[fid] == 0.0:
                continue
            d = ref_haversine(flat, flon, zlat, zlon)
            if d <= d0:
                acc += beds * ref_impedance(d, d0) / denominators[fid]
        scores[zid] = acc
    return scores


def ref_gini_pairwise(values):
    x = np.asarray(values, dtype=float)
    n = x.size
    if x.sum() == 0:
        return 0.0
    return float(np.abs(x[:, None] - x[None, :]).sum() / (2.0 * n * n * x.mean()))


def ref_gi_star(values, neighbor_lists):
    """Direct evaluation of the hot-spot z formula with binary weights."""
    x = np.asarray(values, dtype=float)
    n = x.size
    xbar = x.mean()
    s = math.sqrt(max((x * x).mean() - xbar * xbar, 0.0))
    zs = []
    for nbrs in neighbor_lists:
        w = float(len(nbrs))
        bracket = (n * w - w * w) / (n - 1.0)
        if s == 0.0 or bracket <= 0.0:
            zs.append(0.0)
            continue
        s1 = float(x[list(nbrs)].sum())
        zs.append((s1 - xbar * w) / (s * math.sqrt(bracket)))
    return np.array(zs)


def ref_bh_reject(pvals, alpha):
    p = np.asarray(pvals, dtype=float)
    m = p.size
    order = np.argsort(p, kind="stable")
    ok = p[order] <= alpha * np.arange(1, m + 1) / m
    out = np.zeros(m, dtype=bool)
    if ok.any():
        out[order[: int(np.max(np.nonzero(ok)[0])) + 1]] = True
    return out


def ref_pearson(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xc = x - x.mean()
    yc = y - y.mean()
    denom = math.sqrt(float(xc @ xc) * float(yc @ yc))
    if denom == 0.0:
        return None
    return float(xc @ yc) / denom
