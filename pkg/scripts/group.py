from fractions import Fraction
from typing import Any, Dict, List, Optional

import click

from rank2.errors import Rank2Error
from rank2.group_systems import (
    FiniteAbelian,
    GroupSpec,
    Torus,
    check_G123,
    classify,
    describe,
    dual_transfer,
    load_group,
    matches_dual_transfer,
    transfer_eval,
)
from utils import settings
from utils import utils
from utils.settings import RunConfig

GROUP_FILE = click.Path(exists=True, dir_okay=False)


def _parse_values(text: str) -> List[Fraction]:
    try:
        return [Fraction(p) for p in text.replace(" ", "").split(",") if p]
    except ValueError:
        raise click.BadParameter(f"expected comma separated rationals, got {text!r}")


@click.group()
def group() -> None:
    """Endomorphisms x -> a x of compact abelian groups"""
    pass


@group.command("classify")
@click.option("--group", "group_file", required=True, type=GROUP_FILE)
@click.option("--limit", type=int, default=settings.g123_limit(), show_default=True)
@click.pass_context
def classify_group(ctx: click.Context, group_file: str, limit: int) -> None:
    """Conditions (G1-3), connectedness, torsion and the simplicity verdict"""
    config: RunConfig = ctx.obj
    utils.print_status(f"Begin classifying {group_file}")
    try:
        report = classify(load_group(group_file), range(1, limit + 1))
    except Rank2Error as err:
        utils.print_error(str(err))
        ctx.exit(1)

    row = {
        "group": report.group,
        "G1": report.conditions.g1.status.value,
        "G2": report.conditions.g2.status.value,
        "G3": report.conditions.g3.status.value,
        "connected": report.connected,
        "verdict": report.verdict,
    }
    utils.emit(report.to_json(), config.output, [row])
    utils.print_status("Classification complete")


@group.command()
@click.option("--group", "group_file", required=True, type=GROUP_FILE)
@click.option("--limit", type=int, default=settings.g123_limit(), show_default=True)
@click.option("--range-only", is_flag=True, help="Report only what the scan over 1..limit shows")
@click.pass_context
def g123(ctx: click.Context, group_file: str, limit: int, range_only: bool) -> None:
    """Check (G1) finite index, (G2) finite kernel, (G3) multiplicative kernels"""
    config: RunConfig = ctx.obj
    utils.print_status(f"Begin (G1-3) for {group_file}")
    try:
        g = load_group(group_file)
        report = check_G123(g, range(1, limit + 1), structural=not range_only)
    except Rank2Error as err:
        utils.print_error(str(err))
        ctx.exit(1)

    conditions = {"G1": report.g1, "G2": report.g2, "G3": report.g3}
    rows = [
        {
            "condition": name,
            "status": result.status.value,
            "witness": "" if result.witness is None else str(result.witness),
        }
        for name, result in conditions.items()
    ]
    utils.emit({"group": describe(g), **report.to_json()}, config.output, rows)
    utils.print_status("(G1-3) complete")


def _finite_transfer(g: GroupSpec, a: int, values: List[Fraction]) -> Dict[str, Any]:
    if not isinstance(g, FiniteAbelian):
        raise Rank2Error("--values needs a finite group")
    out = transfer_eval(g, a, values)
    return {
        "group": describe(g),
        "a": a,
        "elements": [list(x) for x in g.elements()],
        "values": [str(v) for v in out],
    }


def _dual_transfer(g: GroupSpec, a: int, x: List[int]) -> Dict[str, Any]:
    if not isinstance(g, Torus):
        raise Rank2Error("--x needs a torus")
    image = dual_transfer(g.rank, a, x)
    return {
        "group": describe(g),
        "a": a,
        "x": x,
        "image": None if image is None else list(image),
        "oracle_agrees": matches_dual_transfer(g.rank, a, x),
    }


@group.command()
@click.option("--group", "group_file", required=True, type=GROUP_FILE)
@click.option("--a", "a", type=click.IntRange(min=1), required=True)
@click.option("--values", default=None, help="Value table on a finite group, e.g. 0,1,0,0")
@click.option("--x", "x", default=None, help="Character of a torus, e.g. 4,0")
@click.pass_context
def transfer(
    ctx: click.Context,
    group_file: str,
    a: int,
    values: Optional[str],
    x: Optional[str],
) -> None:
    """Apply the transfer operator L_a to a value table or a character"""
    if (values is None) == (x is None):
        raise click.UsageError("pass exactly one of --values and --x")
    config: RunConfig = ctx.obj

    utils.print_status(f"Begin transfer L_{a} on {group_file}")
    try:
        g = load_group(group_file)
        if values is not None:
            report = _finite_transfer(g, a, _parse_values(values))
            rows = [
                {"element": str(tuple(e)), "value": v}
                for e, v in zip(report["elements"], report["values"])
            ]
        else:
            report = _dual_transfer(g, a, utils.parse_ints(x or ""))
            rows = [report]
    except (Rank2Error, ValueError) as err:
        utils.print_error(str(err))
        ctx.exit(1)

    utils.emit(report, config.output, rows)
    utils.print_status("Transfer complete")
