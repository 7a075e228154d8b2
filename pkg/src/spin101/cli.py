"""Thin command-line client of the verification service.

Every command builds a request, sends it to the service (in-process by
default; a remote instance via --server or SPIN101_SERVER), and renders the
response into a report envelope. Identical invocations, seeds included,
produce byte-identical payloads; the envelope additionally carries the
config hash and wall-clock duration.

Exit codes: 0 success (including the expected no-coloring verdict on the
built-in configuration), 1 domain-negative result (a coloring exists, or a
simulation check failed), 2 solver/trace disagreement, 64 usage, 65 bad
input data, 66 missing input file, 70 service error, 74 write failure.
"""

from __future__ import annotations

import asyncio
import hashlib
import json
import math
import os
import re
import sys
import time

import click
import httpx

from . import __version__

EXIT_DOMAIN_NEGATIVE = 1
EXIT_INCONSISTENT = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66
EXIT_SERVICE = 70
EXIT_CANTWRITE = 74

_ANGLE_RE = re.compile(r"^\s*([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)\s*(deg|arcmin|rad)\s*$")
_ANGLE_FACTORS = {"deg": math.pi / 180.0, "arcmin": math.pi / 10800.0, "rad": 1.0}


def parse_angle(text: str) -> float:
    """Angle with a mandatory unit suffix (deg | arcmin | rad), in radians.

    The suffix is required: the headline bounds differ only by degree versus
    arcminute, so a silent default unit is the main hazard.
    """
    m = _ANGLE_RE.match(text)
    if not m:
        raise click.UsageError(
            f"angle {text!r} must carry a unit suffix: e.g. 1deg, 1arcmin, 0.01rad"
        )
    return float(m.group(1)) * _ANGLE_FACTORS[m.group(2)]


def _call(server: str | None, method: str, path: str, payload=None, as_text=False):
    async def go():
        if server:
            transport = None
            client = httpx.AsyncClient(base_url=server, timeout=600.0)
        else:
            from .service import app

            transport = httpx.ASGITransport(app=app)
            client = httpx.AsyncClient(
                transport=transport, base_url="http://service.internal", timeout=None
            )
        async with client:
            resp = await client.request(method, path, json=payload)
            body = resp.text if as_text else (resp.json() if resp.content else None)
            return resp.status_code, body

    try:
        status, body = asyncio.run(go())
    except httpx.HTTPError as exc:
        click.echo(f"error: cannot reach service: {exc}", err=True)
        sys.exit(EXIT_SERVICE)
    if status == 422:
        detail = body if as_text else json.dumps(body)
        click.echo(f"error: service rejected input: {detail}", err=True)
        sys.exit(EXIT_DATA)
    if status != 200:
        click.echo(f"error: service returned {status}: {body}", err=True)
        sys.exit(EXIT_SERVICE)
    return body


def _config_hash(config: dict) -> str:
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _envelope(command: str, config: dict, payload, started: float) -> str:
    report = {
        "schema": 1,
        "command": command,
        "version": __version__,
        "config_hash": _config_hash(config),
        "duration_s": round(time.monotonic() - started, 6),
        "payload": payload,
    }
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    path = out
    if not os.path.isabs(path):
        path = os.path.join(os.environ.get("SPIN101_OUT_DIR", "."), path)
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        click.echo(f"error: cannot write {path}: {exc}", err=True)
        sys.exit(EXIT_CANTWRITE)


def _coeff_str(a: int, b: int) -> str:
    if b == 0:
        return str(a)
    root = "r2" if abs(b) == 1 else f"{abs(b)}r2"
    if a == 0:
        return f"{'-' if b < 0 else ''}{root}"
    return f"{a}{'+' if b > 0 else '-'}{root}"


def _read_rays(config_path: str | None):
    if config_path is None:
        return None
    try:
        with open(config_path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        click.echo(f"error: config file not found: {config_path}", err=True)
        sys.exit(EXIT_NOINPUT)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: cannot read {config_path}: {exc}", err=True)
        sys.exit(EXIT_DATA)


@click.group()
@click.version_option(version=__version__)
@click.option(
    "--server",
    envvar="SPIN101_SERVER",
    default=None,
    metavar="URL",
    help="Remote service URL; default is an in-process instance.",
)
@click.pass_context
def cli(ctx: click.Context, server: str | None) -> None:
    """Verification toolkit for the 33-ray configuration and the spin axioms."""
    ctx.obj = {"server": server}


@cli.command()
@click.option("--format", "fmt", type=click.Choice(["json", "text", "dot"]), default="json")
@click.option("--out", default=None, metavar="PATH")
@click.pass_context
def peres(ctx: click.Context, fmt: str, out: str | None) -> None:
    """Emit the built-in 33-ray set with its orthogonality census."""
    started = time.monotonic()
    server = ctx.obj["server"]
    if fmt == "dot":
        text = _call(server, "POST", "/export/dot", {"rays": None}, as_text=True)
        _emit(text, out)
        return
    body = _call(server, "POST", "/graph", {"rays": None})
    if fmt == "text":
        lines = [f"{body['label']}: {body['census']['rays']} rays, "
                 f"{body['census']['edges']} edges, {body['census']['triples']} triples, "
                 f"{body['census']['lone_pairs']} lone pairs"]
        for i, ray in enumerate(body["rays"]):
            coords = ", ".join(_coeff_str(a, b) for a, b in ray)
            lines.append(f"  {i:2d}: ({coords})")
        _emit("\n".join(lines) + "\n", out)
        return
    _emit(_envelope("peres", {"format": fmt}, body, started), out)


@cli.command()
@click.option("--config", default=None, metavar="PATH", help="Custom ray set (JSON).")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("--out", default=None, metavar="PATH")
@click.pass_context
def lemma(ctx: click.Context, config: str | None, fmt: str, out: str | None) -> None:
    """Decide 101-colorability and verify the refutation chain.

    Exit 0 on a verified no-coloring verdict, 1 when a coloring exists
    (the configuration is not of the obstructing kind), 2 when the solver
    and the trace verifier disagree.
    """
    started = time.monotonic()
    rays = _read_rays(config)
    body = _call(ctx.obj["server"], "POST", "/coloring/lemma", {"rays": rays})
    if fmt == "text" and body.get("trace_text"):
        _emit(body["trace_text"], out)
    else:
        _emit(_envelope("lemma", {"config": config}, body, started), out)
    if not body["consistent"]:
        sys.exit(EXIT_INCONSISTENT)
    if body["verdict"] == "SAT":
        sys.exit(EXIT_DOMAIN_NEGATIVE)


@cli.command()
@click.option("--delta", required=True, metavar="ANGLE",
              help="Max misalignment with unit suffix: 1deg, 1arcmin, 0.01rad.")
@click.option("--out", default=None, metavar="PATH")
@click.pass_context
def bounds(ctx: click.Context, delta: str, out: str | None) -> None:
    """Closed-form error bounds for a given misalignment angle."""
    started = time.monotonic()
    radians = parse_angle(delta)
    body = _call(ctx.obj["server"], "POST", "/bounds", {"delta_radians": radians})
    margin = body["contradiction_threshold"] - body["combined"]
    body["verdict"] = (
        f"functional hypothesis contradicted by margin {margin:.6g}"
        if body["contradicts_functional_hypothesis"]
        else "bound does not beat the 1/40 threshold"
    )
    _emit(_envelope("bounds", {"delta": delta}, body, started), out)


@cli.group()
def simulate() -> None:
    """Run the seeded consistency-model and noise simulations."""


def _run_simulation(ctx, kind: str, payload: dict, config: dict, out: str | None) -> None:
    started = time.monotonic()
    body = _call(ctx.obj["server"], "POST", f"/simulate/{kind}", payload)
    _emit(_envelope(f"simulate {kind}", config, body, started), out)
    if not body["checks_passed"]:
        sys.exit(EXIT_DOMAIN_NEGATIVE)


@simulate.command("twin")
@click.option("-n", "n", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--exhaustive", is_flag=True,
              help="Sweep every triple x direction pair in the frame-order check.")
@click.option("--plans", default=None, metavar="PATH",
              help="Session-plan batch file (JSON) to sweep instead of sampling.")
@click.option("--out", default=None, metavar="PATH")
@click.pass_context
def simulate_twin(ctx, n: int, seed: int, exhaustive: bool, plans: str | None,
                  out: str | None) -> None:
    """Seeded twinned sessions with frame-order and no-signalling checks."""
    plan_objs = _read_rays(plans) if plans else None
    _run_simulation(
        ctx, "twin",
        {"n": n, "seed": seed, "exhaustive": exhaustive, "plans": plan_objs},
        {"kind": "twin", "n": n, "seed": seed, "exhaustive": exhaustive, "plans": plans},
        out,
    )


@simulate.command("hex")
@click.option("-n", "n", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", default=None, metavar="PATH")
@click.pass_context
def simulate_hex(ctx, n: int, seed: int, out: str | None) -> None:
    """Hexagonal-universe days under both filler orientations."""
    _run_simulation(ctx, "hex", {"n": n, "seed": seed},
                    {"kind": "hex", "n": n, "seed": seed}, out)


@simulate.command("montecarlo")
@click.option("-n", "n", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--delta", required=True, metavar="ANGLE")
@click.option("--out", default=None, metavar="PATH")
@click.pass_context
def simulate_montecarlo(ctx, n: int, seed: int, delta: str, out: str | None) -> None:
    """Noisy-frame sampling against the closed-form bounds."""
    radians = parse_angle(delta)
    _run_simulation(ctx, "montecarlo", {"n": n, "seed": seed, "delta_radians": radians},
                    {"kind": "montecarlo", "n": n, "seed": seed, "delta": delta}, out)


@cli.group()
def export() -> None:
    """Emit machine-readable artifacts for external tools."""


@export.command("cnf")
@click.option("--config", default=None, metavar="PATH")
@click.option("--out", default=None, metavar="PATH")
@click.pass_context
def export_cnf_cmd(ctx, config: str | None, out: str | None) -> None:
    """DIMACS CNF of the 101 constraints (variable map in the header)."""
    rays = _read_rays(config)
    text = _call(ctx.obj["server"], "POST", "/export/cnf", {"rays": rays}, as_text=True)
    _emit(text, out)


@export.command("graph")
@click.option("--config", default=None, metavar="PATH")
@click.option("--out", default=None, metavar="PATH")
@click.pass_context
def export_graph_cmd(ctx, config: str | None, out: str | None) -> None:
    """GraphViz DOT of the orthogonality graph."""
    rays = _read_rays(config)
    text = _call(ctx.obj["server"], "POST", "/export/dot", {"rays": rays}, as_text=True)
    _emit(text, out)


@cli.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8101)
def serve(host: str, port: int) -> None:
    """Run the verification service standalone."""
    import uvicorn

    uvicorn.run("spin101.service:app", host=host, port=port)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    return 0


if __name__ == "__main__":
    sys.exit(main())
