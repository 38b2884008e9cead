"""ftft command line: fixtures, checks, Morita searches, cohomology and the reproduction report."""
from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import fixtures, gf2, io, repro
from .errors import FtftError
from .fgroup import FiniteGroup
from .report import Report
from .stellar import StarAlgebra, StellarAlgebra, morita_search_stellar, stellar_from_star
from .twogroup import enumerate_extension_maps

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _die(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_USAGE)


def _restrict(rep: Report, clause: str) -> Report:
    if clause not in rep.checked and clause not in rep.failed_clauses:
        _die(f"clause {clause!r} not among {', '.join(rep.checked)}")
    out = Report(rep.subject)
    out.check(clause)
    for v in rep.violations:
        if v.clause == clause:
            out.fail(v.clause, v.message)
    return out


def _emit(rep: Report, as_json: bool):
    click.echo(json.dumps(rep.to_dict(), indent=2, ensure_ascii=False) if as_json else str(rep))


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact checks for fermionic groups, superalgebras, stellar data and 1d/2d theories."""


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--clause", default=None, help="run one clause only")
@click.option("--json", "as_json", is_flag=True, help="machine-readable report")
def check(file, clause, as_json):
    """Validate FILE by its "kind"; exit 0 PASS, 1 FAIL, 2 structural error."""
    try:
        kind, obj = io.load(file)
        rep = fixtures.validate(obj, clause if kind == "tft2d" else None)
    except FtftError as e:
        _die(str(e))
    if clause and kind != "tft2d":
        rep = _restrict(rep, clause)
    _emit(rep, as_json)
    sys.exit(EXIT_PASS if rep.ok else EXIT_FAIL)


def _parse_params(args: list[str]) -> dict:
    out, k = {}, 0
    while k < len(args):
        a = args[k]
        if not a.startswith("--"):
            _die(f"unexpected argument {a!r}")
        key = a[2:]
        if "=" in key:
            key, val = key.split("=", 1)
            k += 1
        elif k + 1 < len(args):
            val = args[k + 1]
            k += 2
        else:
            _die(f"option --{key} needs a value")
        out[key] = val
    return out


@main.command(context_settings={"ignore_unknown_options": True, "allow_extra_args": True})
@click.argument("name", required=False)
@click.option("-o", "--output", default=None, help="output file, '-' for stdout")
@click.option("--list", "list_", is_flag=True, help="list catalog entries")
@click.pass_context
def fixture(ctx, name, output, list_):
    """Write the catalog fixture NAME as canonical JSON; extra --opt value pairs set parameters."""
    if list_ or not name:
        for n, fx in fixtures.CATALOG.items():
            opts = " ".join(f"--{o} <{t.__name__}>" for o, (_, t, _) in fx.params.items())
            click.echo(f"{n:20s} {fx.doc}" + (f"  [{opts}]" if opts else ""))
        return
    if name not in fixtures.CATALOG:
        _die(f"unknown fixture {name!r}; known: {', '.join(fixtures.CATALOG)}")
    params = _parse_params(ctx.args)
    known = fixtures.CATALOG[name].params
    bad = [p for p in params if p not in known]
    if bad:
        _die(f"fixture {name} takes {', '.join('--' + o for o in known) or 'no options'}; got --{bad[0]}")
    try:
        obj = fixtures.build(name, **params)
        text = io.dumps(obj)
    except (FtftError, ValueError, TypeError) as e:
        _die(str(e))
    if output == "-":
        click.echo(text, nl=False)
        return
    if output is None:
        stem = "-".join([name] + [f"{k}{v}" for k, v in params.items()])
        output = Path(os.environ.get("FTFT_FIXTURE_DIR", ".")) / f"{stem}.json"
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    click.echo(str(path))


@main.command()
@click.option("--suite", type=click.Choice(["quick", "paper"]), default="paper")
@click.option("--json", "as_json", is_flag=True)
@click.option("--timings", is_flag=True, help="include wall-clock times (not byte-stable)")
@click.option("--brief", is_flag=True, help="verdict lines only")
@click.option("--only", multiple=True, type=click.Choice([c[0] for c in repro.CHECKS]), help="run these ids only")
def reproduce(suite, as_json, timings, brief, only):
    """Run the acceptance checks; exit 1 if any FAILs."""
    rows = repro.run(suite, timings, set(only))
    click.echo(repro.to_json(rows, timings) if as_json else repro.render(rows, timings, not brief))
    sys.exit(EXIT_FAIL if any(r.verdict == "FAIL" for r in rows) else EXIT_PASS)


@main.group("two-group")
def two_group():
    """Skeletal 2-group tools."""


@two_group.command("enumerate")
@click.option("--model", default=None, help=f"one of {', '.join(fixtures.TWO_GROUPS)}")
@click.option("--file", "file", default=None, type=click.Path(dir_okay=False), help="a skeletal_2group JSON file")
@click.option("--json", "as_json", is_flag=True)
def two_group_enumerate(model, file, as_json):
    """Classes of maps to *//Z2^c (fermionic extensions) of a base 2-group."""
    try:
        if file:
            kind, Gb = io.load(file)
            if kind != "skeletal_2group":
                _die(f"{file} holds a {kind}, not a skeletal_2group")
        else:
            Gb = fixtures.two_group(model or "o2")
        classes = enumerate_extension_maps(Gb)
    except FtftError as e:
        _die(str(e))
    if as_json:
        click.echo(json.dumps([{"Gamma": list(c.Gamma), "Xi_class": c.index} for c in classes], indent=2))
    else:
        click.echo(f"{len(classes)} extension classes")
        for c in classes:
            click.echo(f"  {c.line()}")


def _stellar(path) -> StellarAlgebra:
    kind, obj = io.load(path)
    if isinstance(obj, StarAlgebra):
        return stellar_from_star(obj)
    if isinstance(obj, StellarAlgebra):
        return obj
    _die(f"{path} holds a {kind}; expected star or stellar")


@main.command("morita-search")
@click.argument("first", type=click.Path(dir_okay=False))
@click.argument("second", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def morita_search(first, second, as_json):
    """Search for a stellar Morita equivalence FIRST -> SECOND; exit 0 on WITNESS."""
    try:
        S1, S2 = _stellar(first), _stellar(second)
        res = morita_search_stellar(S1, S2)
    except FtftError as e:
        _die(str(e))
    out = {"verdict": res.verdict, "candidates": res.tried, "notes": res.notes}
    if res.witness is not None:
        out["witness"] = io.to_dict(res.witness.N)
    if as_json:
        click.echo(json.dumps(out, indent=2, ensure_ascii=False))
    else:
        click.echo(f"{res.verdict} ({res.tried} candidate bimodules)")
        for n in res.notes:
            click.echo(f"  note: {n}")
        if res.witness is not None:
            click.echo(f"  witness bimodule: {res.witness.N.name or res.witness.N.dim}")
    sys.exit(EXIT_PASS if res.verdict == "WITNESS" else EXIT_FAIL)


@main.command()
@click.option("--group", "group_file", required=True, type=click.Path(dir_okay=False))
@click.option("--degree", default=2, type=click.IntRange(0, 4))
def cohomology(group_file, degree):
    """dim H^n(G; Z2) of the group in a fermionic_group file."""
    try:
        kind, G = io.load(group_file)
    except FtftError as e:
        _die(str(e))
    if not isinstance(G, FiniteGroup):
        _die(f"{group_file} holds a {kind}, not a group")
    click.echo(f"dim H^{degree}({G.name or 'G'}; Z2) = {gf2.cohomology_dim(G, degree)}")


if __name__ == "__main__":
    main()
