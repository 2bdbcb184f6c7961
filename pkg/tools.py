import sys

import click

from rank2.errors import Rank2Error
from scripts import core, doubling, group, theta
from utils import settings
from utils.settings import RunConfig


@click.group()
@click.option(
    "--output",
    type=click.Choice(settings.output_choices()),
    default=settings.output(),
    show_default=True,
)
@click.option("--path-cap", type=int, default=settings.path_cap(), show_default=True)
@click.option("--seed", type=int, default=settings.seed(), show_default=True)
@click.pass_context
def cli(ctx: click.Context, output: str, path_cap: int, seed: int) -> None:
    """
    Decide periodicity of single-vertex 2-graphs, simplicity of the crossed
    products built from them, and check the transfer-operator identities.
    Theta specs are JSON files {"n1": .., "n2": .., "theta": [[e, f, f', e'], ..]}.
    """
    try:
        ctx.obj = RunConfig(path_cap=path_cap, output=output, seed=seed)
    except Rank2Error as err:
        raise click.BadParameter(str(err))


cli.add_command(theta.theta)
cli.add_command(doubling.double_spec)
cli.add_command(doubling.crossed_product)
cli.add_command(core.core)
cli.add_command(group.group)


def main() -> None:
    """Exit 0 on success, 2 on undecided verdicts, 1 on bad input or usage"""
    try:
        code = cli.main(standalone_mode=False)
    except click.UsageError as err:
        err.show()
        if err.ctx is not None:
            click.echo(err.ctx.get_help(), err=True)
        sys.exit(1)
    except (click.ClickException, click.Abort) as err:
        if isinstance(err, click.ClickException):
            err.show()
        sys.exit(1)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
