from dataclasses import replace
from typing import Any, Dict, List, Optional

import click

from rank2.errors import NotBijective, Rank2Error
from rank2.periodicity import PeriodicityVerdict, VerdictKind, decide_periodicity
from rank2.theta_graph import (
    format_path,
    format_word,
    load_spec,
    parse_word,
    reorder,
    spec_to_json,
)
from utils import settings
from utils import utils
from utils.settings import RunConfig

SPEC_FILE = click.Path(exists=True, dir_okay=False)


def verdict_rows(verdict: PeriodicityVerdict) -> List[Dict[str, Any]]:
    if verdict.witness is not None:
        return [{"mu": mu, "gamma(mu)": nu} for mu, nu in verdict.witness.table()]
    return [
        {
            "verdict": verdict.kind.value,
            "checked": " ".join(f"({a},{b})" for a, b in verdict.checked),
            "kmax": verdict.kmax,
        }
    ]


@click.group()
def theta() -> None:
    """Commutation bijections of single-vertex 2-graphs"""
    pass


@theta.command()
@click.option("--spec", "spec_file", required=True, type=SPEC_FILE)
@click.pass_context
def validate(ctx: click.Context, spec_file: str) -> None:
    """Check that theta is a bijection on edge ids"""
    config: RunConfig = ctx.obj
    utils.print_status(f"Begin validating {spec_file}")
    try:
        spec = load_spec(spec_file)
    except NotBijective as err:
        report = {"valid": False, "error": str(err), "witness": err.witness}
        utils.emit(report, config.output, [{"valid": False, "error": str(err)}])
        utils.print_error(f"Invalid theta: {err}")
        ctx.exit(1)
    except Rank2Error as err:
        utils.print_error(str(err))
        ctx.exit(1)

    report = {"valid": True, **spec_to_json(spec)}
    utils.emit(report, config.output, [{"valid": True, "n1": spec.n1, "n2": spec.n2}])
    utils.print_status("Validation complete")


@theta.command("normal-form")
@click.option("--spec", "spec_file", required=True, type=SPEC_FILE)
@click.option("--word", required=True, help='Edges in any colour order, e.g. "r0 b1"')
@click.option("--pattern", default=None, help="Colour pattern to reorder into, e.g. RB")
@click.pass_context
def normal_form(
    ctx: click.Context, spec_file: str, word: str, pattern: Optional[str]
) -> None:
    """Normal form (blues first) of a word, optionally reordered to a pattern"""
    config: RunConfig = ctx.obj
    utils.print_status(f"Begin normal form of {word!r}")
    try:
        spec = load_spec(spec_file)
        path = parse_word(spec, word)
        report: Dict[str, Any] = {
            "word": word,
            "normal_form": format_path(path),
            "degree": list(path.degree.as_tuple()),
        }
        if pattern is not None:
            report["pattern"] = pattern.upper()
            report["reordered"] = format_word(reorder(path, pattern))
    except Rank2Error as err:
        utils.print_error(str(err))
        ctx.exit(1)

    utils.emit(report, config.output, [report])
    utils.print_status("Normal form complete")


@theta.command()
@click.option("--spec", "spec_file", required=True, type=SPEC_FILE)
@click.option("--kmax", type=int, default=settings.kmax(), show_default=True)
@click.option("--strict", is_flag=True, help="Report Unknown instead of bounded Aperiodic")
@click.pass_context
def periodicity(ctx: click.Context, spec_file: str, kmax: int, strict: bool) -> None:
    """Decide whether the 2-graph is periodic"""
    utils.print_status(f"Begin periodicity of {spec_file}")
    try:
        config: RunConfig = replace(ctx.obj, kmax=kmax)
        spec = load_spec(spec_file)
        verdict = decide_periodicity(spec, config.kmax, config.path_cap, strict)
    except Rank2Error as err:
        utils.print_error(str(err))
        ctx.exit(1)

    utils.emit(verdict.to_json(), config.output, verdict_rows(verdict))
    if verdict.kind == VerdictKind.UNKNOWN:
        utils.print_error("Periodicity undecided within the bound")
        ctx.exit(2)
    utils.print_status(f"Periodicity complete: {verdict.kind.value}")
