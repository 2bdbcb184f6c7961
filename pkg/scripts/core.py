from dataclasses import replace

import click

from rank2.errors import Rank2Error
from rank2.identities import run_identity_suite
from rank2.theta_graph import Degree, load_spec
from scripts.theta import SPEC_FILE
from utils import settings
from utils import utils
from utils.settings import RunConfig


@click.group()
def core() -> None:
    """Symbolic identities of the core and its Hilbert modules"""
    pass


@core.command()
@click.option("--spec", "spec_file", required=True, type=SPEC_FILE)
@click.option(
    "--max-degree",
    default="{},{}".format(*settings.max_degree()),
    show_default=True,
    help="Largest degree d1,d2 the suite draws basis words from",
)
@click.option("--samples", type=int, default=settings.suite_samples(), show_default=True)
@click.pass_context
def verify(ctx: click.Context, spec_file: str, max_degree: str, samples: int) -> None:
    """Run the identity suite and print a pass/fail table"""
    try:
        top = utils.parse_pair(max_degree)
    except ValueError as err:
        raise click.BadParameter(str(err), param_hint="--max-degree")

    utils.print_status(f"Begin identity suite for {spec_file} up to {top}")
    try:
        config: RunConfig = replace(ctx.obj, max_degree=top)
        results = run_identity_suite(
            load_spec(spec_file),
            Degree.of(config.max_degree),
            seed=config.seed,
            samples=samples,
            on_check=utils.print_status,
        )
    except Rank2Error as err:
        utils.print_error(str(err))
        ctx.exit(1)

    rows = [result.to_json() for result in results]
    failed = [result.name for result in results if not result.passed]
    report = {
        "max_degree": list(config.max_degree),
        "seed": config.seed,
        "passed": not failed,
        "checks": rows,
    }
    utils.emit(report, config.output, rows)
    if failed:
        utils.print_error(f"{len(failed)} identities failed: {', '.join(failed)}")
        ctx.exit(1)
    utils.print_status("Identity suite complete")
