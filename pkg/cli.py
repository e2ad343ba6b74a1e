#!/usr/bin/env python3
"""
tfan command line

Validates divisorial fans, decides smoothness, builds and verifies
A-coverings and generates divisorial fans from complete toric fans. Every
command prints a JSON document and exits with 0 (pass), 1 (rule failure) or
2 (input error).
"""
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import typer
from dotenv import load_dotenv

from api.client import LOG_LEVEL, dump_document, write_document
import tools.acover as acover
import tools.downgrade as downgrade
import tools.smooth as smooth
import tools.validate as validate
from utils.reports import EXIT_CODES, STATUS_ERROR

# Load environment variables from .env file
load_dotenv()

logging.basicConfig(level=getattr(logging, LOG_LEVEL, logging.INFO), stream=sys.stderr)

SCHEMA_PATH = Path(__file__).parent / "schema" / "report.schema.json"

app = typer.Typer(
    name="tfan",
    help="Polyhedral divisors, divisorial fans and A-coverings on P^1",
    no_args_is_help=True,
    add_completion=False,
)


def _emit(result: Dict[str, Any], out: Optional[Path]) -> None:
    if out is not None:
        success, info = write_document(str(out), result)
        if not success:
            typer.echo(info["error"], err=True)
            raise typer.Exit(EXIT_CODES[STATUS_ERROR])
    typer.echo(dump_document(result), nl=False)


def _finish(result: Dict[str, Any], out: Optional[Path]) -> None:
    _emit(result, out)
    raise typer.Exit(EXIT_CODES.get(result.get("status", STATUS_ERROR), EXIT_CODES[STATUS_ERROR]))


@app.command("validate")
def validate_command(
    path: Path = typer.Argument(..., help="Divisorial fan document"),
    out: Optional[Path] = typer.Option(None, "--out", help="Also write the report here"),
    close_intersections: Optional[bool] = typer.Option(
        None,
        "--close-intersections/--no-close-intersections",
        help="Add pairwise intersections of members before validating",
    ),
) -> None:
    """Check properness, the slice rule and the degree rule"""
    _finish(validate.validate_fan(str(path), close_intersections), out)


@app.command("smooth")
def smooth_command(
    path: Path = typer.Argument(..., help="Divisorial fan document"),
    out: Optional[Path] = typer.Option(None, "--out", help="Also write the report here"),
    threads: Optional[int] = typer.Option(None, "--threads", min=1, help="Worker threads"),
) -> None:
    """Decide smoothness of the complete T-variety"""
    _finish(smooth.check_smooth(str(path), threads), out)


@app.command("acover")
def acover_command(
    path: Path = typer.Argument(..., help="Divisorial fan of a smooth complete T-variety"),
    out: Optional[Path] = typer.Option(None, "--out", help="Also write the report here"),
    threads: Optional[int] = typer.Option(None, "--threads", min=1, help="Worker threads"),
) -> None:
    """Build and certify an A-covering"""
    _finish(acover.construct_acover(str(path), threads), out)


@app.command("verify-acover")
def verify_acover_command(
    fan: Path = typer.Argument(..., help="Divisorial fan document"),
    charts: Path = typer.Argument(..., help="A-covering document, e.g. an acover report"),
    out: Optional[Path] = typer.Option(None, "--out", help="Also write the report here"),
) -> None:
    """Check a covering against a fan"""
    _finish(acover.verify_acover_document(str(fan), str(charts)), out)


@app.command("downgrade")
def downgrade_command(
    path: Path = typer.Argument(..., help="Complete toric fan document"),
    project: int = typer.Option(-1, "--project", help="Index of the height coordinate"),
    out: Optional[Path] = typer.Option(None, "--out", help="Also write the document here"),
) -> None:
    """Divisorial fan of a complete toric fan"""
    result = downgrade.downgrade_toric_fan(str(path), project)
    if "error" in result:
        position = f" at {result['position']}" if result.get("position") else ""
        typer.echo(f"error{position}: {result['error']}", err=True)
        raise typer.Exit(EXIT_CODES[STATUS_ERROR])
    _emit(result, out)


@app.command("schema")
def schema_command() -> None:
    """Print the JSON schema of reports"""
    typer.echo(SCHEMA_PATH.read_text(encoding="utf-8"), nl=False)


# Start the command line when run directly
if __name__ == "__main__":
    app()
