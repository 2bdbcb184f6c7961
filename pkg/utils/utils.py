import datetime
import json
import sys
from typing import Any, Dict, List, Optional, Tuple

import click
import pandas as pd
from colorama import Fore, init

# Initialize terminal coloring
init(autoreset=True)


def timestamp() -> str:
    return datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S")


def print_status(text: str) -> None:
    status_blue = Fore.CYAN
    print(f"{status_blue}{timestamp()} - {text}", file=sys.stderr)


def print_error(text: str) -> None:
    error_red = Fore.RED
    print(f"{error_red}{timestamp()} - {text}", file=sys.stderr)


def parse_pair(text: str) -> Tuple[int, int]:
    """Parse "d1,d2" (parentheses and spaces allowed) into a pair of naturals."""
    parts = [p for p in text.strip().strip("()").replace(" ", "").split(",") if p]
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ValueError(f"expected two naturals like 2,2, got {text!r}")
    return int(parts[0]), int(parts[1])


def parse_ints(text: str) -> List[int]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"expected comma separated integers, got {text!r}")


def dump_json(report: Any) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def render_table(rows: List[Dict[str, Any]]) -> str:
    if not rows:
        return ""
    df = pd.DataFrame(rows).fillna("")
    return df.to_string(index=False)


def emit(report: Any, output: str, rows: Optional[List[Dict[str, Any]]] = None) -> None:
    """Write the report to stdout, as JSON or as a table of rows"""
    if output == "table" and rows is not None:
        click.echo(render_table(rows))
    else:
        click.echo(dump_json(report))
