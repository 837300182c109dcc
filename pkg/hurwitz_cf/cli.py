"""
Hurwitz CF Toolkit - Command Line Interface

Subcommands: expand, transform, verify and count (xrho, sandwich, cd, gform,
constant). Reports go to stdout or ``--out``; logs go to stderr.

Exit codes: 0 success or every check passed, 1 a check failed, 2 usage,
parse or parameter error, 3 precision exhausted.
"""

import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Awaitable, Callable, Dict, Optional

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from .config_manager import ConfigurationManager, RunConfig, parse_terms
from .core import HurwitzToolkit
from .errors import HurwitzToolkitError
from .reporting import render
from .types import CountMethod, OperationResult, OutputFormat, PROPERTY_NAMES

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

USAGE_ERROR_CODES = {
    "PARSE_ERROR", "INVALID_PARAMETER", "DELTA_OUT_OF_RANGE", "UNKNOWN_PROPERTY",
    "KIND_MISMATCH", "INSUFFICIENT_TERMS", "INVALID_SEQUENCE", "FIELD_MISMATCH",
    "SQUAREFREE_BOUND_EXCEEDED", "DIVISION_BY_ZERO", "ZERO_DENOMINATOR",
}


def exit_code_for(result: OperationResult) -> int:
    if result.success:
        return EXIT_OK
    if result.error_code == "CHECK_FAILED":
        return EXIT_CHECK_FAILED
    if result.error_code == "PRECISION_EXHAUSTED":
        return EXIT_PRECISION
    if result.error_code in USAGE_ERROR_CODES:
        return EXIT_USAGE
    return EXIT_CHECK_FAILED


def setup_logging(level: str) -> None:
    handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False)
    logging.basicConfig(level=level, format="%(message)s", handlers=[handler], force=True)


def _build_run(ctx: click.Context, subcommand: str, **fields: Any) -> RunConfig:
    try:
        return RunConfig(subcommand=subcommand, settings=ctx.obj["settings"],
                         out=ctx.obj["out"], **fields)
    except ValidationError as e:
        messages = "; ".join(error["msg"] for error in e.errors())
        raise click.UsageError(messages, ctx) from e


def _execute(ctx: click.Context, run: RunConfig,
             operation: Callable[[HurwitzToolkit], Awaitable[OperationResult]]) -> None:
    """Run one toolkit operation, emit its report and exit with the mapped code"""
    logger.debug("request %s", ConfigurationManager.dump_run(run))

    async def main() -> OperationResult:
        async with HurwitzToolkit(run.settings) as toolkit:
            return await operation(toolkit)

    result = asyncio.run(main())
    if result.data and "report" in result.data:
        text = render(result.data["report"], run.settings.output_format)
        if run.out:
            Path(run.out).write_text(text, encoding="utf-8")
        else:
            click.echo(text, nl=False)
    if not result.success:
        click.echo(f"error [{result.error_code}]: {result.message}", err=True)
    ctx.exit(exit_code_for(result))


@click.group()
@click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat]),
              default=None, help="Report format (json, csv, plain)")
@click.option("--precision-bits", type=int, default=None, help="Refinement cap for interval reals")
@click.option("--chunk-size", type=int, default=None, help="Denominators per enumeration chunk")
@click.option("--workers", type=int, default=None, help="Executor threads for enumeration")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report here")
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="JSON settings file")
@click.pass_context
def cli(ctx: click.Context, output_format: Optional[str], precision_bits: Optional[int],
        chunk_size: Optional[int], workers: Optional[int], out: Optional[str],
        log_level: Optional[str], config_path: Optional[str]):
    """Exact Hurwitz and classical continued fractions"""
    overrides: Dict[str, Any] = {
        "output_format": output_format,
        "precision_bits": precision_bits,
        "chunk_size": chunk_size,
        "workers": workers,
        "log_level": log_level,
    }
    try:
        settings = ConfigurationManager(config_path).load(overrides)
    except (ValidationError, HurwitzToolkitError) as e:
        raise click.UsageError(str(e), ctx) from e
    setup_logging(settings.log_level)
    ctx.obj = {"settings": settings, "out": out}


@cli.command()
@click.option("--algo", type=click.Choice(["classical", "hurwitz"]), default="hurwitz")
@click.option("--x", "x", required=True, help="Exact literal, e.g. (1+sqrt(5))/2, 17/12, dec:3.14159@64")
@click.option("--terms", "n_terms", type=int, default=None, help="Number of partial quotients")
@click.option("--negative", is_flag=True, help="Emit the negative Hurwitz form")
@click.pass_context
def expand(ctx: click.Context, algo: str, x: str, n_terms: Optional[int], negative: bool):
    """Partial quotients and convergents of x"""
    run = _build_run(ctx, "expand", algo=algo, x=x, n_terms=n_terms, negative=negative)
    _execute(ctx, run, lambda toolkit: toolkit.expand(run.x, run.algo, run.n_terms, run.negative))


@cli.command()
@click.option("--x", "x", default=None, help="Exact literal to expand classically")
@click.option("--b", "b_terms", default=None, help="Raw classical quotients, e.g. 0,2,1,1,4")
@click.option("--terms", "n_terms", type=int, default=None, help="Classical terms taken from x")
@click.pass_context
def transform(ctx: click.Context, x: Optional[str], b_terms: Optional[str], n_terms: Optional[int]):
    """Rewrite a classical expansion into the Hurwitz expansion"""
    if (x is None) == (b_terms is None):
        raise click.UsageError("give exactly one of --x or --b", ctx)
    run = _build_run(ctx, "transform", x=x, b_terms=b_terms, n_terms=n_terms)

    def operation(toolkit: HurwitzToolkit) -> Awaitable[OperationResult]:
        if run.b_terms is not None:
            return toolkit.transform(b_terms=parse_terms(run.b_terms))
        return toolkit.transform(x=run.x, n_terms=run.n_terms)

    _execute(ctx, run, operation)


@cli.command()
@click.option("--prop", required=True, type=click.Choice(list(PROPERTY_NAMES)))
@click.option("--x", "x", default=None, help="Exact literal")
@click.option("--terms", default=None, help="Hurwitz quotient sequence, e.g. 5,2,-2")
@click.option("--n", "n", type=int, default=None, help="Largest index checked")
@click.option("--rho", type=int, default=None, help="Denominator bound for oracle checks")
@click.option("--delta", default=None, help="Approximation constant p/q")
@click.option("--sample", type=int, default=None, help="Run on this many seeded random surds")
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def verify(ctx: click.Context, prop: str, x: Optional[str], terms: Optional[str], n: Optional[int],
           rho: Optional[int], delta: Optional[str], sample: Optional[int], seed: int):
    """Check a property exactly; exit 0 only if every check passes"""
    run = _build_run(ctx, "verify", prop=prop, x=x, terms=terms, n=n, rho=rho, delta=delta)
    if sample is not None:
        _execute(ctx, run, lambda toolkit: toolkit.verify_sample(
            run.prop, sample, seed, n=run.n, rho=run.rho, delta=run.delta))
    else:
        _execute(ctx, run, lambda toolkit: toolkit.verify(
            run.prop, x=run.x, terms=run.terms, n=run.n, rho=run.rho, delta=run.delta))


@cli.group()
def count():
    """Approximation counts"""


@count.command("xrho")
@click.option("--x", "x", required=True)
@click.option("--delta", required=True)
@click.option("--rho", type=int, required=True)
@click.option("--method", type=click.Choice([m.value for m in CountMethod]), default="oracle")
@click.option("--witnesses", is_flag=True, help="List every approximant")
@click.option("--decimal", is_flag=True, help="Render witness quality as decimal enclosures")
@click.pass_context
def count_xrho(ctx: click.Context, x: str, delta: str, rho: int, method: str, witnesses: bool,
               decimal: bool):
    """Primitive p/q, 0 < q <= rho, with |q(qx - p)| <= delta"""
    run = _build_run(ctx, "count", action="xrho", x=x, delta=delta, rho=rho, method=method,
                     witnesses=witnesses)
    _execute(ctx, run, lambda toolkit: toolkit.count_xrho(
        run.x, run.delta, run.rho, run.method, run.witnesses, decimal))


@count.command("sandwich")
@click.option("--x", "x", required=True)
@click.option("--delta", required=True)
@click.option("--n", "n", type=int, required=True)
@click.pass_context
def count_sandwich(ctx: click.Context, x: str, delta: str, n: int):
    """Convergent count sandwich at index n"""
    run = _build_run(ctx, "count", action="sandwich", x=x, delta=delta, n=n)
    _execute(ctx, run, lambda toolkit: toolkit.count_sandwich(run.x, run.delta, run.n))


@count.command("cd")
@click.option("--x", "x", required=True)
@click.option("--delta", required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--threshold", "thresholds", multiple=True, help="Extra density threshold A")
@click.pass_context
def count_cd(ctx: click.Context, x: str, delta: str, n: int, thresholds: tuple):
    """Finite-index density and average proxies"""
    run = _build_run(ctx, "count", action="cd", x=x, delta=delta, n=n,
                     thresholds=",".join(thresholds) if thresholds else None)
    _execute(ctx, run, lambda toolkit: toolkit.count_cd(run.x, run.delta, run.n, list(thresholds)))


@count.command("gform")
@click.option("--a", "a", required=True)
@click.option("--b", "b", required=True)
@click.option("--c", "c", required=True)
@click.option("--d", "d", required=True)
@click.option("--delta", required=True)
@click.option("--kappa", required=True)
@click.option("--rho", type=int, required=True)
@click.option("--witnesses", is_flag=True)
@click.option("--linkage", is_flag=True, help="Compare #G(rho) with X_rho at x = -a/b")
@click.pass_context
def count_gform(ctx: click.Context, a: str, b: str, c: str, d: str, delta: str, kappa: str,
                rho: int, witnesses: bool, linkage: bool):
    """G(rho) for Q(p, q) = (aq + bp)(cq + dp)"""
    run = _build_run(ctx, "count", action="gform", a=a, b=b, c=c, d=d, delta=delta, kappa=kappa,
                     rho=rho, witnesses=witnesses, linkage=linkage)
    _execute(ctx, run, lambda toolkit: toolkit.count_gform(
        run.a, run.b, run.c, run.d, run.delta, run.kappa, run.rho, run.witnesses, run.linkage))


@count.command("constant")
@click.pass_context
def count_constant(ctx: click.Context):
    """log 2 - (2 - phi) > max(log(9/5)/4, log(2)/8)"""
    run = _build_run(ctx, "count", action="constant")
    _execute(ctx, run, lambda toolkit: toolkit.constant_check())


def main(argv: Optional[list] = None) -> int:
    """Console entry point"""
    try:
        code = cli.main(args=argv, prog_name="hurwitz-cf", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    return code if isinstance(code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
