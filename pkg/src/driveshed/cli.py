"""Command-line access to the pipeline.

Data goes to standard output, everything else (progress, warnings,
errors) to standard error, so `driveshed isochrone ... > area.geojson`
just works. Exit codes: 0 success, 1 domain or data error, 2 usage.

local-stats --format json writes the exact bytes the HTTP service
would return for the same query, via the same builder and serializer.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .config import AppConfig, load_config
from .counties import load_counties
from .errors import DriveshedError
from .gazetteer import load_gazetteer
from .geojson import feature, geometry_from_multipolygon
from .geometry import GeoPoint
from .graph import load_graph, nearest_node, reachable_set
from .isochrone import IsochroneConfig, MODES, build_isochrone
from .series import parse_csse
from .service import ServiceState, build_local_stats, canonical_json, create_app
from .snapshot import SnapshotHolder, build_snapshot


def _fail(exc):
    code = getattr(exc, "code", None)
    prefix = f"error: {code}: " if code else "error: "
    click.echo(prefix + str(exc), err=True)
    sys.exit(1)


@click.group()
def main():
    """Drive-time epidemic stats, offline."""


_path_opts = [
    click.option("--graph-nodes", type=click.Path(path_type=Path)),
    click.option("--graph-edges", type=click.Path(path_type=Path)),
    click.option("--counties", type=click.Path(path_type=Path)),
    click.option("--cases-csv", type=click.Path(path_type=Path)),
    click.option("--deaths-csv", type=click.Path(path_type=Path)),
    click.option("--gazetteer", type=click.Path(path_type=Path)),
]


def _with_path_opts(fn):
    for opt in reversed(_path_opts):
        fn = opt(fn)
    return fn


def _config_from_flags(config, flag_paths):
    """Either --config or the full set of data-path flags."""
    given = {k: v for k, v in flag_paths.items() if v is not None}
    if config is not None:
        if given:
            raise click.UsageError(
                "--config cannot be combined with data-path flags")
        try:
            return load_config(config)
        except DriveshedError as exc:
            _fail(exc)
    missing = [k for k, v in flag_paths.items() if v is None]
    if missing:
        raise click.UsageError(
            "give --config, or all of: "
            + ", ".join("--" + k.replace("_", "-") for k in flag_paths))
    return AppConfig(commitment_log=Path("commitments.jsonl"), **given)


@main.command()
@click.option("--lat", type=float, required=True)
@click.option("--lon", type=float, required=True)
@click.option("--budget", type=float, default=3600.0, show_default=True,
              help="Drive-time budget in seconds.")
@click.option("--graph-nodes", type=click.Path(path_type=Path),
              required=True)
@click.option("--graph-edges", type=click.Path(path_type=Path),
              required=True)
@click.option("--cell-size", type=float, default=1000.0, show_default=True)
@click.option("--mode", type=click.Choice(MODES), default="concave-grid",
              show_default=True)
@click.option("--snap-radius", type=float, default=5000.0, show_default=True)
@click.option("--dilation", type=int, default=1, show_default=True)
def isochrone(lat, lon, budget, graph_nodes, graph_edges, cell_size, mode,
              snap_radius, dilation):
    """Compute a drive-time area and print it as a GeoJSON Feature."""
    try:
        cfg = IsochroneConfig(budget=budget, cell_size=cell_size, mode=mode,
                              snap_radius=snap_radius, dilation=dilation)
        g = load_graph(graph_nodes, graph_edges)
        origin = GeoPoint(lon=lon, lat=lat)
        source = nearest_node(g, origin, cfg.snap_radius)
        reach = reachable_set(g, source, cfg.budget)
        area = build_isochrone(reach, g, cfg)
    except (DriveshedError, OSError, ValueError) as exc:
        _fail(exc)
    doc = feature(geometry_from_multipolygon(area), {
        "budget": budget, "mode": mode,
        "reached_nodes": len(reach.arrivals)})
    click.echo(canonical_json(doc).decode())


@main.command("local-stats")
@click.option("--lat", type=float)
@click.option("--lon", type=float)
@click.option("--place")
@click.option("--config", type=click.Path(path_type=Path))
@_with_path_opts
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="json", show_default=True)
def local_stats(lat, lon, place, config, fmt, **flag_paths):
    """What is the virus doing near this location?"""
    has_coords = lat is not None or lon is not None
    if has_coords and (lat is None or lon is None):
        raise click.UsageError("--lat and --lon go together")
    if has_coords == (place is not None):
        raise click.UsageError("give --lat/--lon or --place, not both")
    cfg = _config_from_flags(config, flag_paths)
    try:
        state = ServiceState(
            cfg=cfg, graph=load_graph(cfg.graph_nodes, cfg.graph_edges),
            gazetteer=load_gazetteer(cfg.gazetteer),
            holder=SnapshotHolder(build_snapshot(cfg)), store=None)
        payload = build_local_stats(state, lat=lat, lon=lon, place=place)
    except (DriveshedError, OSError) as exc:
        _fail(exc)
    if fmt == "json":
        click.echo(canonical_json(payload).decode())
        return
    for line in payload["summary"]:
        click.echo(line)
    click.echo()
    rows = [("FIPS", "COUNTY", "CASES", "DEATHS")]
    rows += [(c["fips"], c["name"], str(c["cases"]), str(c["deaths"]))
             for c in payload["counties"]]
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    for r in rows:
        click.echo("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    click.echo(f"\ndata version {payload['data_version']}", err=True)


@main.command()
@click.option("--config", type=click.Path(path_type=Path))
@_with_path_opts
def validate(config, **flag_paths):
    """Check every data file; exit nonzero if any is unusable."""
    cfg = _config_from_flags(config, flag_paths)
    errors = 0
    warnings = 0

    def check(label, loader):
        nonlocal errors, warnings
        try:
            warns = loader()
        except (DriveshedError, OSError) as exc:
            click.echo(f"error: {label}: {exc}", err=True)
            errors += 1
            return
        for w in warns:
            click.echo(f"warning: {label}: {w}", err=True)
            warnings += 1
        click.echo(f"ok: {label}", err=True)

    def quiet(loader):
        def run():
            loader()
            return ()
        return run

    check(f"{cfg.graph_nodes} + {cfg.graph_edges}",
          quiet(lambda: load_graph(cfg.graph_nodes, cfg.graph_edges)))
    check(cfg.counties, quiet(lambda: load_counties(cfg.counties)))
    check(cfg.cases_csv, lambda: parse_csse(cfg.cases_csv, "cases").warnings)
    check(cfg.deaths_csv,
          lambda: parse_csse(cfg.deaths_csv, "deaths").warnings)
    check(cfg.gazetteer, quiet(lambda: load_gazetteer(cfg.gazetteer)))

    click.echo(f"{errors} error(s), {warnings} warning(s)", err=True)
    sys.exit(1 if errors else 0)


@main.command()
@click.option("--config", type=click.Path(path_type=Path), required=True)
@click.option("--host", default=None, help="Override the configured address.")
@click.option("--port", type=int, default=None)
def serve(config, host, port):
    """Run the HTTP service until interrupted."""
    try:
        cfg = load_config(config)
        app = create_app(cfg)
    except (DriveshedError, OSError) as exc:
        _fail(exc)
    import uvicorn
    uvicorn.run(app, host=host or cfg.listen_host,
                port=port or cfg.listen_port, log_level="info")


if __name__ == "__main__":
    main()
