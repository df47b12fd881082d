"""Command-line interface.

Subcommands: access, gini, ttest, hotspot, bivariate, risk-index,
mortality, pipeline, synth. Configuration resolves from defaults, then
--config JSON, then GEOACCESS_SEED (seed only), then explicit flags.
Exit codes: 0 success, 1 validation/usage error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import pipeline as pl
from .config import RunConfig, load_config
from .errors import ValidationError
from .ingest import load_counties, load_facilities, load_zones
from .outcomes import AGGREGATE_YEAR
from .output import write_csv, write_geojson
from .synth import generate_synthetic_region

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems as exit code 1."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _add_config_flags(p: _Parser):
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="JSON config file with RunConfig keys")
    g.add_argument("--d0", type=float, dest="catchment_miles", help="catchment threshold, miles")
    g.add_argument("--impedance", choices=("gaussian", "exponential", "power"))
    g.add_argument("--demand", choices=("patients", "population"))
    g.add_argument("--scheme", choices=("fixed_band", "knn"), dest="weights_scheme")
    g.add_argument("--band", type=float, dest="band_miles", help="fixed band distance, miles")
    g.add_argument("--k", type=int, dest="knn_k", help="neighbor count for knn weights")
    g.add_argument("--permutations", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--variance-target", type=float, dest="variance_target")
    g.add_argument("--fdr", action="store_true", default=None,
                   help="apply Benjamini-Hochberg correction to hot spot classes")
    g.add_argument("--min-neighbors", type=int, dest="min_neighbors")
    g.add_argument("--workers", type=int)
    g.add_argument("--poverty-col", dest="poverty_column")
    g.add_argument("--prevalence-cols", dest="prevalence_columns",
                   help="comma-separated prevalence column names")


_CONFIG_KEYS = (
    "catchment_miles", "impedance", "demand", "weights_scheme", "band_miles", "knn_k",
    "permutations", "seed", "variance_target", "fdr", "min_neighbors", "workers",
    "poverty_column", "prevalence_columns",
)


def _resolve_config(args) -> RunConfig:
    overrides = {k: getattr(args, k, None) for k in _CONFIG_KEYS}
    if overrides.get("prevalence_columns") is not None:
        overrides["prevalence_columns"] = tuple(
            c.strip() for c in overrides["prevalence_columns"].split(",") if c.strip()
        )
    return load_config(path=args.config, overrides=overrides)


def _build_parser() -> _Parser:
    parser = _Parser(prog="geoaccess", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="subcommand")

    def add(name, help_text, **needs):
        p = sub.add_parser(name, help=help_text)
        if needs.get("zones"):
            p.add_argument("--zones", required=True, help="zones CSV")
            p.add_argument("--geometry", help="optional GeoJSON joined by zone_id")
        if needs.get("facilities"):
            p.add_argument("--facilities", required=needs["facilities"] is True,
                           help="facilities CSV")
        if needs.get("counties"):
            p.add_argument("--counties", required=True, help="county outcomes CSV")
        if needs.get("out"):
            p.add_argument("--out", required=True, help="output CSV path")
            p.add_argument("--geojson-out", help="output GeoJSON path (needs --geometry)")
        if needs.get("out_dir"):
            p.add_argument("--out-dir", required=True, help="output directory")
        _add_config_flags(p)
        return p

    add("access", "two-step floating catchment accessibility scores",
        zones=True, facilities=True, out=True)
    add("gini", "overall and urban/rural Gini of accessibility",
        zones=True, facilities=True, out=True)
    p = add("ttest", "rural versus urban Welch t-tests",
            zones=True, facilities="optional", out=True)
    p.add_argument("--columns", help="comma-separated variables (default: accessibility + attributes)")
    p = add("hotspot", "Getis-Ord Gi* hot/cold spots",
            zones=True, facilities="optional", out=True)
    p.add_argument("--value-col", default="accessibility",
                   help="zone column to analyze (default accessibility)")
    p = add("bivariate", "permutation-tested local bivariate association",
            zones=True, facilities="optional", out=True)
    p.add_argument("--x", required=True, help="x column (attribute, accessibility, or risk_index)")
    p.add_argument("--y", required=True, help="y column (attribute, accessibility, or risk_index)")
    add("risk-index", "PCA composite health-risk index", zones=True, out=True)
    p = add("mortality", "county mortality ratios and service status", counties=True, out=True)
    p.add_argument("--years", default="all", help="'all', a single year, or first:last")
    add("pipeline", "run every analysis stage into a directory",
        zones=True, facilities=True, counties=True, out_dir=True)
    p = add("synth", "generate a deterministic synthetic region", out_dir=True)
    p.add_argument("--n-urban", type=int, default=40)
    p.add_argument("--n-rural", type=int, default=80)
    p.add_argument("--n-facilities", type=int, default=16)
    return parser


def _load_sorted_zones(args):
    zones = load_zones(args.zones, geometry_path=getattr(args, "geometry", None))
    return pl.sorted_zones(zones)


def _maybe_geojson(args, zones, attrs_by_zone):
    path = getattr(args, "geojson_out", None)
    if path is None:
        return
    if not any(z.geometry is not None for z in zones):
        raise ValidationError("--geojson-out requires --geometry with joined features")
    write_geojson(path, zones, attrs_by_zone)


def _parse_years(spec: str, counties):
    if spec == "all":
        return sorted({c.year for c in counties if c.year != AGGREGATE_YEAR})
    if ":" in spec:
        first, last = spec.split(":", 1)
        try:
            lo, hi = int(first), int(last)
        except ValueError:
            raise ValidationError(f"bad --years value {spec!r}")
        if hi < lo:
            raise ValidationError(f"bad --years range {spec!r}")
        return list(range(lo, hi + 1))
    try:
        return [int(spec)]
    except ValueError:
        raise ValidationError(f"bad --years value {spec!r}")


def _cmd_access(args, cfg):
    zones = _load_sorted_zones(args)
    facilities = load_facilities(args.facilities)
    field = pl.compute_access(zones, facilities, cfg)
    rows = pl.access_rows(zones, field)
    write_csv(args.out, pl.ACCESS_HEADER, rows)
    for fac_id, reason in field.skipped_facilities:
        print(f"note: facility {fac_id} skipped: {reason}", file=sys.stderr)
    _maybe_geojson(args, zones, {zid: {"accessibility": v} for zid, v in rows})


def _cmd_gini(args, cfg):
    zones = _load_sorted_zones(args)
    field = pl.compute_access(zones, load_facilities(args.facilities), cfg)
    write_csv(args.out, pl.GINI_HEADER, pl.gini_rows(zones, field))


def _require_facilities(args, purpose):
    if args.facilities is None:
        raise ValidationError(f"--facilities is required to compute {purpose}")
    return load_facilities(args.facilities)


def _cmd_ttest(args, cfg):
    zones = _load_sorted_zones(args)
    if args.columns:
        columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    else:
        columns = ["accessibility"] + sorted(zones[0].attributes)
    computed = {}
    if "accessibility" in columns:
        field = pl.compute_access(zones, _require_facilities(args, "accessibility"), cfg)
        computed["accessibility"] = field.zone_scores
    write_csv(args.out, pl.TTEST_HEADER, pl.ttest_rows(zones, columns, computed))


def _cmd_hotspot(args, cfg):
    zones = _load_sorted_zones(args)
    if args.value_col == "accessibility":
        field = pl.compute_access(zones, _require_facilities(args, "accessibility"), cfg)
        values = [field.zone_scores[z.zone_id] for z in zones]
    else:
        values = pl.resolve_series(zones, args.value_col)
    rows = pl.hotspot_rows(zones, values, cfg)
    write_csv(args.out, pl.HOTSPOT_HEADER, rows)
    _maybe_geojson(args, zones, {
        r[0]: {"value": r[1], "z": r[2], "p": r[3], "category": r[4]} for r in rows
    })


def _cmd_bivariate(args, cfg):
    zones = _load_sorted_zones(args)
    computed = {}
    needed = {args.x, args.y}
    if "accessibility" in needed:
        field = pl.compute_access(zones, _require_facilities(args, "accessibility"), cfg)
        computed["accessibility"] = field.zone_scores
    if "risk_index" in needed:
        rk_rows, _ = pl.risk_rows(zones, cfg)
        computed["risk_index"] = {zid: v for zid, v in rk_rows}
    rows = pl.bivariate_rows(zones, args.x, args.y, cfg, computed)
    write_csv(args.out, pl.BIVARIATE_HEADER, rows)
    _maybe_geojson(args, zones, {
        r[0]: {"x_value": r[1], "y_value": r[2], "local_r": r[3],
               "pseudo_p": r[4], "category": r[5]} for r in rows
    })


def _cmd_risk_index(args, cfg):
    zones = _load_sorted_zones(args)
    rows, index = pl.risk_rows(zones, cfg)
    write_csv(args.out, pl.RISK_HEADER, rows)
    print(
        f"retained {index.retained_components} components, "
        f"captured variance {index.captured_variance:.4f}",
        file=sys.stderr,
    )
    _maybe_geojson(args, zones, {zid: {"risk_index": v} for zid, v in rows})


def _cmd_mortality(args, cfg):
    counties = load_counties(args.counties)
    years = _parse_years(args.years, counties)
    write_csv(args.out, pl.MORTALITY_HEADER, pl.mortality_rows(counties, years))


def _cmd_pipeline(args, cfg):
    zones = _load_sorted_zones(args)
    facilities = load_facilities(args.facilities)
    counties = load_counties(args.counties)
    written = pl.run_pipeline(zones, facilities, counties, args.out_dir, cfg)
    for name in sorted(written):
        print(f"wrote {written[name]}", file=sys.stderr)


def _cmd_synth(args, cfg):
    zones, facilities, counties = generate_synthetic_region(
        cfg.seed, args.n_urban, args.n_rural, args.n_facilities
    )
    os.makedirs(args.out_dir, exist_ok=True)
    attr_names = sorted(zones[0].attributes)
    zone_rows = [
        [z.zone_id, z.centroid.lat, z.centroid.lon, int(z.population),
         int(z.adrd_patients), z.urban] + [z.attributes[a] for a in attr_names]
        for z in sorted(zones, key=lambda z: z.zone_id)
    ]
    write_csv(os.path.join(args.out_dir, "zones.csv"),
              ["zone_id", "lat", "lon", "population", "adrd_patients", "urban"] + attr_names,
              zone_rows)
    write_csv(os.path.join(args.out_dir, "facilities.csv"),
              ["facility_id", "lat", "lon", "beds"],
              [[f.facility_id, f.location.lat, f.location.lon, int(f.beds)]
               for f in sorted(facilities, key=lambda f: f.facility_id)])
    write_csv(os.path.join(args.out_dir, "counties.csv"),
              ["county_id", "year", "adrd_deaths", "adrd_patients", "population_50plus"],
              [[c.county_id, c.year, int(c.adrd_deaths), int(c.adrd_patients),
                int(c.population_50plus)]
               for c in sorted(counties, key=lambda c: (c.county_id, c.year))])


_COMMANDS = {
    "access": _cmd_access,
    "gini": _cmd_gini,
    "ttest": _cmd_ttest,
    "hotspot": _cmd_hotspot,
    "bivariate": _cmd_bivariate,
    "risk-index": _cmd_risk_index,
    "mortality": _cmd_mortality,
    "pipeline": _cmd_pipeline,
    "synth": _cmd_synth,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 1
        cfg = _resolve_config(args)
        _COMMANDS[args.command](args, cfg)
        return 0
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
