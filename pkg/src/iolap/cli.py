"""Command line entry points: serve (HTTP), repl (interactive), run (script
mode: one statement per line, one JSON document per line on stdout)."""
from __future__ import annotations

import json
import os
import sys

import click

from . import iql
from .errors import EngineError
from .intents import Context, execute
from .mdcore import Catalog


def _seed():
    return int(os.environ.get("ENGINE_SEED", "42"))


def _load_catalog(path):
    return Catalog.load_dir(path)


@click.group()
def main():
    """Intentional analytics engine."""


@main.command()
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--catalog", "catalog_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
def serve(port, host, catalog_dir):
    """Start the HTTP service."""
    import uvicorn

    from .server import create_app
    app = create_app(_load_catalog(catalog_dir), seed=_seed())
    uvicorn.run(app, host=host, port=port)


def _run_line(line, ctx):
    statement = iql.parse_statement(line)
    return json.dumps(execute(statement, ctx).to_json(), sort_keys=True)


@main.command()
@click.option("--catalog", "catalog_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
def repl(catalog_dir):
    """Interactive prompt: type statements, see result documents."""
    ctx = Context(_load_catalog(catalog_dir), seed=_seed())
    click.echo("engine repl — one statement per line, Ctrl-D to exit")
    while True:
        try:
            line = input("> ").strip()
        except EOFError:
            break
        if not line:
            continue
        try:
            click.echo(_run_line(line, ctx))
        except EngineError as exc:
            click.echo(json.dumps(exc.to_json(), sort_keys=True))


@main.command()
@click.option("--catalog", "catalog_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--script", "script_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def run(catalog_dir, script_path):
    """Run a script: one statement per line, print one document per line."""
    ctx = Context(_load_catalog(catalog_dir), seed=_seed())
    with open(script_path) as fh:
        lines = fh.readlines()
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            click.echo(_run_line(line, ctx))
        except EngineError as exc:
            doc = exc.to_json()
            doc["line"] = lineno
            click.echo(json.dumps(doc, sort_keys=True))
            sys.exit(1)


if __name__ == "__main__":
    main()
