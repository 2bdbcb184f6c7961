from dataclasses import replace

import click

from rank2.doubling import crossed_product_verdict, double
from rank2.errors import Rank2Error
from rank2.theta_graph import load_spec
from scripts.theta import SPEC_FILE
from utils import settings
from utils import utils
from utils.settings import RunConfig


@click.command("double")
@click.option("--spec", "spec_file", required=True, type=SPEC_FILE)
@click.pass_context
def double_spec(ctx: click.Context, spec_file: str) -> None:
    """Build the doubled 2-graph on monochrome pairs of edges"""
    config: RunConfig = ctx.obj
    utils.print_status(f"Begin doubling {spec_file}")
    try:
        eta = double(load_spec(spec_file))
    except Rank2Error as err:
        utils.print_error(str(err))
        ctx.exit(1)

    rows = []
    for blue, red, red_image, blue_image in eta.spec.rows:
        rows.append(
            {
                "blue": "(b{} b{})".format(*eta.blue_pair(blue)),
                "red": "(r{} r{})".format(*eta.red_pair(red)),
                "red image": "(r{} r{})".format(*eta.red_pair(red_image)),
                "blue image": "(b{} b{})".format(*eta.blue_pair(blue_image)),
            }
        )
    utils.emit(eta.to_json(), config.output, rows)
    utils.print_status(f"Doubling complete: {eta.spec.n1} blue and {eta.spec.n2} red edges")


@click.command("crossed-product")
@click.option("--spec", "spec_file", required=True, type=SPEC_FILE)
@click.option("--kmax", type=int, default=settings.kmax(), show_default=True)
@click.option("--strict", is_flag=True, help="Report Unknown instead of bounded Aperiodic")
@click.pass_context
def crossed_product(ctx: click.Context, spec_file: str, kmax: int, strict: bool) -> None:
    """Simplicity of the crossed product of the core by the Yang endomorphisms"""
    utils.print_status(f"Begin crossed product of {spec_file}")
    try:
        config: RunConfig = replace(ctx.obj, kmax=kmax)
        report = crossed_product_verdict(
            load_spec(spec_file), config.kmax, config.path_cap, strict
        )
    except Rank2Error as err:
        utils.print_error(str(err))
        ctx.exit(1)

    row = {
        "simple": report.simple,
        "bounded": report.bounded,
        "purely_infinite": report.purely_infinite,
        "doubled": report.periodicity.kind.value,
        "reason": report.reason,
    }
    utils.emit(report.to_json(), config.output, [row])
    if report.simple is None:
        utils.print_error("Crossed product undecided within the bound")
        ctx.exit(2)
    utils.print_status("Crossed product complete")
