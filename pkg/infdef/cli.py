"""``infdef`` command line: a click group over the session services."""
import json
import logging
from dataclasses import dataclass
from functools import wraps
from typing import Callable, Optional

import click

from .core.config import settings
from .core.errors import InfdefError, SessionError
from .core.logging import configure_logging
from .schemas.report import Report
from .schemas.session import OutputFormat
from .selftest import run_selftest
from .services import commands
from .services.session import SessionContext

logger = logging.getLogger(__name__)


@dataclass
class State:
    session: Optional[str] = None
    fixture: Optional[str] = None
    as_json: Optional[bool] = None

    def context(self, degree: Optional[int] = None) -> SessionContext:
        if self.session and self.fixture:
            raise SessionError("give either --session or --fixture, not both")
        if self.session:
            ctx = SessionContext.from_path(self.session, degree)
        elif self.fixture:
            ctx = SessionContext.fixture(self.fixture, degree)
        else:
            raise SessionError("no session: pass --session FILE or --fixture NAME")
        if self.as_json is None:
            self.as_json = ctx.session.options.format == OutputFormat.JSON
        return ctx


pass_state = click.make_pass_decorator(State, ensure=True)


def emit(state: State, report: Report) -> None:
    if state.as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        click.echo(report.text(), nl=False)
    if not report.ok():
        raise click.exceptions.Exit(1)


def reporting(fn: Callable) -> Callable:
    """Run a command body; domain errors become their exit code and a message on stderr."""

    @wraps(fn)
    def wrapper(state: State, *args, **kwargs):
        try:
            report = fn(state, *args, **kwargs)
        except InfdefError as exc:
            logger.debug("command failed", exc_info=True)
            if state.as_json:
                click.echo(json.dumps(exc.as_dict(), indent=2, default=str))
            click.echo(f"error: {exc.message}", err=True)
            raise click.exceptions.Exit(exc.exit_code)
        emit(state, report)

    return wrapper


def simple_option(fn):
    return click.option("--simple", "simple", default=None, help="Vertex of the simple module (default: the sum of all simples).")(fn)


def degree_option(fn):
    return click.option("--degree", "-N", type=click.IntRange(min=0), default=None, help="Resolution degree N.")(fn)


@click.group()
@click.option("--session", "-s", type=click.Path(dir_okay=False), default=None, help="Session file (TOML).")
@click.option("--fixture", "-x", default=None, help="Packaged example session, e.g. ex1, ex3_r4.")
@click.option("--json", "as_json", is_flag=True, default=None, help="Machine-readable report.")
@click.option("--log-level", default=None, type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
@click.pass_context
def cli(ctx: click.Context, session, fixture, as_json, log_level):
    """Infinitesimal deformations of quiver algebras: resolutions and Ext."""
    configure_logging(log_level or settings.log_level)
    ctx.obj = State(session=session, fixture=fixture, as_json=True if as_json else None)


@cli.group()
def alg():
    """The quotient algebra A."""


@alg.command("check")
@pass_state
@reporting
def alg_check(state: State):
    """Dimension, normal-form basis and rewriting rules of A."""
    return commands.algebra_check(state.context())


@cli.group()
def cocycle():
    """The Hochschild cochain f."""


@cocycle.command("check")
@pass_state
@reporting
def cocycle_check(state: State):
    """Test the 2-cocycle identity on all basis triples."""
    return commands.cocycle_check(state.context())


@cli.group()
def deform():
    """The deformed algebra A_f."""


@deform.command("info")
@click.option("--hom-dims", is_flag=True, help="Also report dim Hom between hat projectives.")
@pass_state
@reporting
def deform_info(state: State, hom_dims: bool):
    return commands.deform_info(state.context(), hom_dims=hom_dims)


@cli.command()
@simple_option
@click.option("--over", type=click.Choice(commands.OVER), default="base")
@click.option("--method", type=click.Choice(commands.METHODS), default="generic")
@degree_option
@click.option("--compare", is_flag=True, help="Check the explicit complex against the generic engine.")
@click.option("--witnesses", is_flag=True, help="Run the kernel witness on kernel bases.")
@pass_state
@reporting
def resolve(state: State, simple, over, method, degree, compare, witnesses):
    """Minimal projective resolution of a simple module (or of their sum)."""
    ctx = state.context(degree)
    return commands.resolve(ctx, simple, over, method, ctx.degree, compare=compare, witnesses=witnesses)


@cli.group()
def star():
    """Condition (*) and its correction data."""


@star.command("check")
@simple_option
@degree_option
@pass_state
@reporting
def star_check(state: State, simple, degree):
    ctx = state.context(degree)
    return commands.star_check(ctx, simple, ctx.degree)


@cli.group()
def ext():
    """Ext over A and A_f."""


@ext.command("dims")
@simple_option
@click.option("--over", type=click.Choice(commands.OVER), default=None, help="Only this side (default: both, with the partial-sum check).")
@degree_option
@pass_state
@reporting
def ext_dims(state: State, simple, over, degree):
    """dim Ext^n(S_v, S) over A and over A_f."""
    ctx = state.context(degree)
    return commands.ext_dims(ctx, simple, ctx.degree, over=over)


@ext.command("basis")
@click.option("--degree", "-n", type=click.IntRange(min=0), required=True)
@pass_state
@reporting
def ext_basis(state: State, degree):
    """Canonical basis of Ext^n_{A_f}(S, S) in component form."""
    return commands.ext_basis(state.context(), degree)


@cli.command()
@click.option("--h", "h", required=True, help="Left factor, e.g. 1:[1 0|0 0 1].")
@click.option("--g", "g", required=True, help="Right factor.")
@click.option("--method", type=click.Choice(commands.PRODUCTS), default="formula")
@click.option("--check", is_flag=True, help="Also run the other two methods and compare.")
@pass_state
@reporting
def yoneda(state: State, h, g, method, check):
    """Yoneda product h o g in Ext_{A_f}(S, S)."""
    return commands.yoneda(state.context(), h, g, method, check=check)


@cli.group()
def corollary():
    """Tensor-product description of the Ext algebra."""


@corollary.command("check")
@degree_option
@click.option("--associativity", is_flag=True, help="Also check associativity of the product table.")
@pass_state
@reporting
def corollary_check(state: State, degree, associativity):
    ctx = state.context(degree)
    return commands.corollary(ctx, ctx.degree, associativity=associativity)


@cli.group("emit")
def emit_group():
    """Renderings."""


@emit_group.command("dot")
@pass_state
@reporting
def emit_dot(state: State):
    """Graphviz DOT of the quiver."""
    return commands.emit_dot(state.context())


@cli.command()
@click.option("--only", multiple=True, help="Restrict to these fixtures.")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Fixtures run in parallel (default: settings).")
@pass_state
@reporting
def selftest(state: State, only, jobs):
    """Run the acceptance suite over the packaged example sessions."""
    return run_selftest(only=list(only) or None, jobs=jobs or settings.selftest_jobs)


def main() -> None:
    cli(prog_name="infdef")


if __name__ == "__main__":
    main()
