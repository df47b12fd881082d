"""Analysis stages shared by the CLI subcommands and the full pipeline.

Every stage takes zones already sorted by id and returns plain rows
ready for the deterministic writers, so running the stages one by one
produces byte-identical files to running the whole pipeline.
"""

from __future__ import annotations

import math
import os

from .accessibility import accessibility_scores
from .config import RunConfig
from .equity import gini_stratified, welch_t_test
from .errors import ValidationError
from .outcomes import aggregate_years, classify_service_status
from .output import write_csv, write_geojson
from .risk import fit_risk_model, health_risk_index
from .spatial import build_weights, classify_hotspots, getis_ord_gi_star, local_bivariate

ACCESS_HEADER = ["zone_id", "accessibility"]
GINI_HEADER = ["stratum", "n", "mean", "gini"]
HOTSPOT_HEADER = ["zone_id", "value", "z", "p", "category"]
RISK_HEADER = ["zone_id", "risk_index"]
BIVARIATE_HEADER = ["zone_id", "x_value", "y_value", "local_r", "pseudo_p", "category"]
MORTALITY_HEADER = [
    "county_id", "years_contributing", "adrd_deaths", "adrd_patients", "population_50plus",
    "deaths_per_patient", "deaths_per_pop50", "diagnosis_rate", "label", "elevated",
]
TTEST_HEADER = [
    "variable", "n_rural", "n_urban", "mean_rural", "mean_urban",
    "var_rural", "var_urban", "t", "df", "p", "flag",
]

__all__ = [
    "ACCESS_HEADER", "GINI_HEADER", "HOTSPOT_HEADER", "RISK_HEADER",
    "BIVARIATE_HEADER", "MORTALITY_HEADER", "TTEST_HEADER",
    "sorted_zones", "resolve_series", "compute_access", "access_rows",
    "gini_rows", "hotspot_rows", "risk_rows", "bivariate_rows",
    "mortality_rows", "ttest_rows", "run_pipeline",
]


def sorted_zones(zones):
    return sorted(zones, key=lambda z: z.zone_id)


def compute_access(zones, facilities, cfg: RunConfig):
    return accessibility_scores(
        zones, facilities,
        d0=cfg.catchment_miles, demand=cfg.demand, family=cfg.impedance,
        workers=cfg.workers,
    )


def _zone_weights(zones, cfg: RunConfig):
    points = [(z.zone_id, z.centroid) for z in zones]
    if cfg.weights_scheme == "knn":
        return build_weights(points, "knn", include_self=True, k=cfg.knn_k)
    return build_weights(points, "fixed_band", include_self=True, band=cfg.band_miles)


def resolve_series(zones, name: str, computed: dict | None = None) -> list[float]:
    """Per-zone values for a named column.

    ``computed`` maps derived column names (accessibility, risk_index)
    to zone_id -> value dicts; anything else must be a zone attribute.
    """
    computed = computed or {}
    if name in computed:
        table = computed[name]
        return [table[z.zone_id] for z in zones]
    values = []
    for z in zones:
        if name not in z.attributes:
            raise ValidationError(f"zone {z.zone_id!r} has no attribute column {name!r}")
        values.append(z.attributes[name])
    return values


def access_rows(zones, field):
    return [(z.zone_id, field.zone_scores[z.zone_id]) for z in zones]


def gini_rows(zones, field):
    strat = gini_stratified(field, zones)
    rows = [("overall", strat.overall.n, strat.overall.mean, strat.overall.gini)]
    for name, result in (("urban", strat.urban), ("rural", strat.rural)):
        if result is None:
            rows.append((name, 0, None, None))
        else:
            rows.append((name, result.n, result.mean, result.gini))
    return rows


def hotspot_rows(zones, values, cfg: RunConfig):
    weights = _zone_weights(zones, cfg)
    result = classify_hotspots(getis_ord_gi_star(values, weights), fdr=cfg.fdr)
    return [
        (zid, v, float(z), float(p), cat)
        for zid, v, z, p, cat in zip(result.ids, values, result.z, result.p, result.category)
    ]


def risk_rows(zones, cfg: RunConfig):
    matrix = [[None] * len(cfg.prevalence_columns) for _ in zones]
    for i, zone in enumerate(zones):
        for j, col in enumerate(cfg.prevalence_columns):
            if col not in zone.attributes:
                raise ValidationError(f"zone {zone.zone_id!r} has no attribute column {col!r}")
            matrix[i][j] = zone.attributes[col]
    model, standardized = fit_risk_model(matrix, columns=list(cfg.prevalence_columns))
    index = health_risk_index(model, standardized, target=cfg.variance_target)
    rows = [(z.zone_id, float(s)) for z, s in zip(zones, index.scores)]
    return rows, index


def bivariate_rows(zones, x_name: str, y_name: str, cfg: RunConfig, computed=None):
    x = resolve_series(zones, x_name, computed)
    y = resolve_series(zones, y_name, computed)
    weights = _zone_weights(zones, cfg)
    result = local_bivariate(
        x, y, weights,
        permutations=cfg.permutations, seed=cfg.seed,
        min_neighbors=cfg.min_neighbors, workers=cfg.workers,
    )
    rows = []
    for zid, xv, yv, r, p, cat in zip(result.ids, x, y, result.local_r, result.pseudo_p,
                                      result.category):
        rows.append((zid, xv, yv, None if math.isnan(r) else float(r), float(p), cat))
    return rows


def mortality_rows(counties, years=None, elevated_sd: float = 1.0):
    if years is None:
        years = sorted({c.year for c in counties})
    aggregated = aggregate_years(counties, years)
    statuses = {s.county_id: s for s in classify_service_status(aggregated, elevated_sd=elevated_sd)}
    rows = []
    for county in aggregated:
        s = statuses[county.county_id]
        rows.append((
            county.county_id, county.contributing_years,
            county.adrd_deaths, county.adrd_patients, county.population_50plus,
            s.mortality_per_patient, s.mortality_per_pop50, s.diagnosis_rate,
            s.label, s.elevated,
        ))
    return rows


def ttest_rows(zones, columns, computed=None):
    """Rural-versus-urban Welch comparisons, one row per variable.

    Group a is rural and group b urban, so a negative t means the urban
    mean exceeds the rural mean.
    """
    rural = [z for z in zones if not z.urban]
    urban = [z for z in zones if z.urban]
    if not rural or not urban:
        raise ValidationError("t-test comparison requires both rural and urban zones")
    rows = []
    for name in columns:
        series = dict(zip((z.zone_id for z in zones), resolve_series(zones, name, computed)))
        a = [series[z.zone_id] for z in rural]
        b = [series[z.zone_id] for z in urban]
        res = welch_t_test(a, b)
        flag = "ok"
        if res.degenerate:
            flag = "degenerate"
        elif res.infinite_separation:
            flag = "infinite_separation"
        rows.append((
            name, res.n_a, res.n_b, res.mean_a, res.mean_b,
            res.var_a, res.var_b, res.t, res.df, res.p, flag,
        ))
    return rows


def run_pipeline(zones, facilities, counties, out_dir, cfg: RunConfig) -> dict:
    """Run every analysis stage and write the full set of output files.

    Returns a mapping from stage name to the written CSV path. GeoJSON
    twins appear alongside each zone-level CSV when any zone carries
    geometry.
    """
    os.makedirs(out_dir, exist_ok=True)
    zones = sorted_zones(zones)
    poverty = cfg.poverty_column
    has_geometry = any(z.geometry is not None for z in zones)
    written: dict[str, str] = {}

    def emit(name, header, rows, geo_attrs=None):
        path = os.path.join(out_dir, f"{name}.csv")
        write_csv(path, header, rows)
        written[name] = path
        if geo_attrs is not None and has_geometry:
            write_geojson(os.path.join(out_dir, f"{name}.geojson"), zones, geo_attrs)

    field = compute_access(zones, facilities, cfg)
    acc_rows = access_rows(zones, field)
    emit("access", ACCESS_HEADER, acc_rows,
         {zid: {"accessibility": v} for zid, v in acc_rows})

    emit("gini", GINI_HEADER, gini_rows(zones, field))

    access_by_zone = {zid: v for zid, v in acc_rows}
    hs_rows = hotspot_rows(zones, [access_by_zone[z.zone_id] for z in zones], cfg)
    emit("hotspot_accessibility", HOTSPOT_HEADER, hs_rows,
         {r[0]: {"value": r[1], "z": r[2], "p": r[3], "category": r[4]} for r in hs_rows})

    rk_rows, _ = risk_rows(zones, cfg)
    emit("risk_index", RISK_HEADER, rk_rows,
         {zid: {"risk_index": v} for zid, v in rk_rows})

    computed = {
        "accessibility": access_by_zone,
        "risk_index": {zid: v for zid, v in rk_rows},
    }
    for y_name in ("accessibility", "risk_index"):
        rows = bivariate_rows(zones, poverty, y_name, cfg, computed)
        emit(f"bivariate_{poverty}_{y_name}", BIVARIATE_HEADER, rows,
             {r[0]: {"x_value": r[1], "y_value": r[2], "local_r": r[3],
                     "pseudo_p": r[4], "category": r[5]} for r in rows})

    emit("mortality", MORTALITY_HEADER, mortality_rows(counties))
    return written
