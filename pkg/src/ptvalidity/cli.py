"""
Command line front end.

Exit codes: 0 when the answer is positive (valid, provable, derivable), 1
when it is negative, 2 on usage or input errors. Results go to stdout,
preceded by ``# key: value`` lines echoing the effective configuration;
diagnostics and logs go to stderr.
"""
from __future__ import annotations

import logging
import sys
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, TypeVar, cast

import click
from pydantic import BaseModel, ConfigDict

from .arguments import is_closed, normalize, print_argument, require_wellformed, s_valid_argument
from .bridge import formula_to_rules, rule_to_formula
from .config import EngineSettings, load_settings
from .data.argument_repo import load_argument
from .data.base_repo import load_base
from .data.findings_repo import read_findings, write_findings
from .errors import PTVError
from .explorer import (
    SearchCaps,
    check_harrop_family,
    find_superintuitionistic,
    harrop_antecedents,
    report,
)
from .ipc import ipc_provable, kripke_counterexample
from .rules import BotPolicy, deriver_for, parse_rule
from .semantics import consequence, ptv_valid, render_certificate, valid, valid_optimized
from .syntax import FALSUM, AtomF, Bot, Formula, parse_formula, print_formula
from .systems import System, build_system

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

Subcommand = Literal[
    "derive", "translate", "check", "entails", "argcheck", "normalize", "ipc", "search", "harrop",
    "report",
]

EXISTING_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)


class Invocation(BaseModel):
    """A parsed command line: the subcommand and its effective options."""

    model_config = ConfigDict(frozen=True)

    subcommand: Subcommand
    options: Dict[str, Any]


def _guarded(fn: F) -> F:
    """Turn package errors into exit code 2 with a one-line diagnostic."""

    @wraps(fn)
    def wrapper(*args: Any, **kw: Any) -> Any:
        try:
            return fn(*args, **kw)
        except PTVError as e:
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            sys.exit(2)

    return cast(F, wrapper)


def _settings(ctx: click.Context) -> EngineSettings:
    return cast(EngineSettings, ctx.obj)


def _policy(ctx: click.Context) -> BotPolicy:
    return BotPolicy(_settings(ctx).policy)


def _start(ctx: click.Context, options: Dict[str, Any], **header: Any) -> None:
    """Log the invocation and print the configuration header."""
    name = ctx.info_name or ""
    invocation = Invocation(subcommand=cast(Subcommand, name), options=options)
    logger.info(f"Invocation: {invocation.model_dump_json()}")
    settings = _settings(ctx)
    click.echo(f"# command: {name}")
    click.echo(f"# policy: {settings.policy}")
    click.echo(f"# universe-cap: {settings.universe_cap}")
    for key, value in header.items():
        click.echo(f"# {key.replace('_', '-')}: {value}")


def _load_system(ctx: click.Context, path: Path) -> System:
    return build_system(path, cap=_settings(ctx).universe_cap)


def _system_header(system: System) -> str:
    return f"{system.name} ({system.size()} bases, {len(system.universe)} rules)"


def _finish(ok: bool, positive: str, negative: str) -> None:
    click.echo(positive if ok else negative)
    sys.exit(0 if ok else 1)


@click.group()
@click.option("--config", type=EXISTING_FILE, default=None, help="dotenv-format settings file")
@click.option("--policy", type=click.Choice(["explosion", "atom"]), default=None)
@click.option(
    "--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]), default=None
)
@click.option("--universe-cap", type=click.IntRange(min=1), default=None)
@click.pass_context
def cli(
    ctx: click.Context,
    config: Optional[Path],
    policy: Optional[str],
    log_level: Optional[str],
    universe_cap: Optional[int],
) -> None:
    """Proof-theoretic validity over finite atomic systems."""
    try:
        settings = load_settings(config)
    except PTVError as e:
        click.echo(f"error: {type(e).__name__}: {e}", err=True)
        sys.exit(2)
    overrides = {"policy": policy, "log_level": log_level, "universe_cap": universe_cap}
    settings = settings.model_copy(update={k: v for k, v in overrides.items() if v is not None})
    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.obj = settings


# --- Rules ---


@cli.command()
@click.option("--base", "base_file", type=EXISTING_FILE, required=True)
@click.option("--goal", required=True, help="an atom, or bot")
@click.option("--certificate", is_flag=True, help="print the derivation")
@click.pass_context
@_guarded
def derive(ctx: click.Context, base_file: Path, goal: str, certificate: bool) -> None:
    """Decide whether a base derives an atom."""
    target = parse_formula(goal)
    if not isinstance(target, (AtomF, Bot)):
        raise click.BadParameter("expected an atom or bot", param_hint="--goal")
    atom = FALSUM if isinstance(target, Bot) else target.atom
    base = load_base(base_file)
    _start(ctx, {"base": str(base_file), "goal": goal}, base=base)

    d = deriver_for(_policy(ctx)).derivation(base, atom)
    if certificate and d is not None:
        for step in d.steps():
            click.echo(f"  {step}")
    _finish(d is not None, "derivable", "underivable")


@cli.command()
@click.option("--rule", "rule_text", default=None, help="rule to render as a formula")
@click.option("--formula", "formula_text", default=None, help="formula to render as rules")
@click.pass_context
@_guarded
def translate(ctx: click.Context, rule_text: Optional[str], formula_text: Optional[str]) -> None:
    """Translate between rules and disjunction-free formulas."""
    if (rule_text is None) == (formula_text is None):
        raise click.UsageError("give exactly one of --rule or --formula")
    _start(ctx, {"rule": rule_text, "formula": formula_text})
    if rule_text is not None:
        click.echo(print_formula(rule_to_formula(parse_rule(rule_text, allow_bot=True))))
    else:
        for r in sorted(formula_to_rules(parse_formula(cast(str, formula_text)))):
            click.echo(r.key)


# --- Validity ---


def _system_options(fn: F) -> F:
    fn = click.option("--certificate", is_flag=True, help="print the certificate trace")(fn)
    fn = click.option(
        "--base", "base_index", type=click.IntRange(min=0), default=0,
        help="zero-based index of the base in enumeration order",
    )(fn)
    return click.option("--system", "system_file", type=EXISTING_FILE, required=True)(fn)


@cli.command()
@_system_options
@click.option("--formula", "formula_text", required=True)
@click.option("--all-bases", is_flag=True, help="check every base of the system")
@click.option("--optimized", is_flag=True, help="minimal-extension evaluation")
@click.pass_context
@_guarded
def check(
    ctx: click.Context,
    system_file: Path,
    base_index: int,
    certificate: bool,
    formula_text: str,
    all_bases: bool,
    optimized: bool,
) -> None:
    """Decide validity of a formula at a base (or at every base)."""
    f = parse_formula(formula_text)
    system = _load_system(ctx, system_file)
    options = {"system": str(system_file), "base": base_index, "formula": formula_text,
               "all_bases": all_bases, "optimized": optimized}
    if all_bases:
        _start(ctx, options, system=_system_header(system), formula=print_formula(f))
        verdict = ptv_valid(system, f, _policy(ctx), optimized=optimized)
    else:
        base = system.base_at(base_index)
        _start(ctx, options, system=_system_header(system), base=base, formula=print_formula(f))
        check_fn = valid_optimized if optimized else valid
        verdict = check_fn(system, base, f, _policy(ctx))
    if certificate:
        click.echo(render_certificate(verdict.certificate))
    elif all_bases and not verdict.valid:
        click.echo(f"failing base: {verdict.certificate.base}")
    elif verdict.counterexample is not None:
        click.echo(f"counterexample: {verdict.counterexample}")
    _finish(verdict.valid, "valid", "invalid")


@cli.command()
@_system_options
@click.option("--assume", "assumption_texts", multiple=True, help="an assumption (repeatable)")
@click.option("--formula", "formula_text", required=True)
@click.pass_context
@_guarded
def entails(
    ctx: click.Context,
    system_file: Path,
    base_index: int,
    certificate: bool,
    assumption_texts: Sequence[str],
    formula_text: str,
) -> None:
    """Decide whether the assumptions have the formula as a consequence at a base."""
    assumptions = [parse_formula(t) for t in assumption_texts]
    f = parse_formula(formula_text)
    system = _load_system(ctx, system_file)
    base = system.base_at(base_index)
    _start(
        ctx,
        {"system": str(system_file), "base": base_index, "assume": list(assumption_texts),
         "formula": formula_text},
        system=_system_header(system),
        base=base,
        assumptions=", ".join(print_formula(a) for a in assumptions) or "-",
        formula=print_formula(f),
    )
    verdict = consequence(system, base, assumptions, f, _policy(ctx))
    if certificate:
        click.echo(render_certificate(verdict.certificate))
    elif verdict.counterexample is not None:
        click.echo(f"counterexample: {verdict.counterexample}")
    _finish(verdict.valid, "valid", "invalid")


# --- Arguments ---


@cli.command()
@_system_options
@click.option("--arg", "arg_file", type=EXISTING_FILE, required=True)
@click.pass_context
@_guarded
def argcheck(
    ctx: click.Context, system_file: Path, base_index: int, certificate: bool, arg_file: Path
) -> None:
    """Decide validity of an argument at a base."""
    a = load_argument(arg_file)
    system = _load_system(ctx, system_file)
    base = system.base_at(base_index)
    _start(
        ctx,
        {"system": str(system_file), "base": base_index, "arg": str(arg_file)},
        system=_system_header(system),
        base=base,
        conclusion=print_formula(a.conclusion),
        closed=str(is_closed(a)).lower(),
    )
    verdict = s_valid_argument(system, base, a, _policy(ctx))
    if certificate:
        click.echo(render_certificate(verdict.certificate))
    _finish(verdict.valid, "valid", "invalid")


@cli.command("normalize")
@click.option("--arg", "arg_file", type=EXISTING_FILE, required=True)
@click.option("--fuel", type=click.IntRange(min=1), default=None)
@click.option(
    "--strategy",
    type=click.Choice(["leftmost-outermost", "rightmost-innermost"]),
    default="leftmost-outermost",
)
@click.pass_context
@_guarded
def normalize_cmd(ctx: click.Context, arg_file: Path, fuel: Optional[int], strategy: str) -> None:
    """Remove detours from an argument and print its normal form."""
    fuel = fuel or _settings(ctx).fuel
    a = load_argument(arg_file)
    require_wellformed(a)
    _start(
        ctx, {"arg": str(arg_file), "fuel": fuel, "strategy": strategy},
        fuel=fuel, strategy=strategy,
    )
    result = normalize(a, fuel=fuel, strategy=cast(Any, strategy))
    if result.exhausted:
        click.echo(f"error: normalization ran out of fuel after {result.steps} steps", err=True)
        sys.exit(2)
    click.echo(f"# steps: {result.steps}")
    click.echo(print_argument(result.argument, indent="  "))


# --- Intuitionistic oracle ---


@cli.command()
@click.option("--formula", "formula_text", required=True)
@click.option("--countermodel", is_flag=True, help="search for a Kripke countermodel")
@click.option("--max-worlds", type=click.IntRange(min=1), default=None)
@click.pass_context
@_guarded
def ipc(
    ctx: click.Context, formula_text: str, countermodel: bool, max_worlds: Optional[int]
) -> None:
    """Decide intuitionistic provability."""
    f = parse_formula(formula_text)
    max_worlds = max_worlds or _settings(ctx).max_worlds
    _start(
        ctx,
        {"formula": formula_text, "countermodel": countermodel, "max_worlds": max_worlds},
        formula=print_formula(f),
        max_worlds=max_worlds,
    )
    provable = ipc_provable(f)
    if countermodel and not provable:
        model = kripke_counterexample(f, max_worlds)
        if model is None:
            click.echo(f"no countermodel with at most {max_worlds} worlds")
        else:
            click.echo(model.render())
    _finish(provable, "provable", "unprovable")


# --- Explorer ---


@cli.command()
@click.option("--system", "system_file", type=EXISTING_FILE, required=True)
@click.option("--max-atoms", type=click.IntRange(min=1), default=3)
@click.option("--max-depth", type=click.IntRange(min=1), default=3)
@click.option("--max-formulas", type=click.IntRange(min=1), default=100_000)
@click.option("--findings-cap", type=click.IntRange(min=1), default=None)
@click.option("--optimized", is_flag=True)
@click.option("--format", "fmt", type=click.Choice(["text", "csv"]), default="text")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
@_guarded
def search(
    ctx: click.Context,
    system_file: Path,
    max_atoms: int,
    max_depth: int,
    max_formulas: int,
    findings_cap: Optional[int],
    optimized: bool,
    fmt: str,
    output: Optional[Path],
) -> None:
    """List formulas valid in the system that intuitionistic logic does not prove."""
    caps = SearchCaps(
        max_atoms=max_atoms,
        max_depth=max_depth,
        max_formulas=max_formulas,
        findings_cap=findings_cap or _settings(ctx).findings_cap,
    )
    system = _load_system(ctx, system_file)
    _start(
        ctx,
        {"system": str(system_file), **caps.model_dump(), "format": fmt,
         "output": str(output) if output else None},
        system=_system_header(system),
        caps=" ".join(f"{k}={v}" for k, v in caps.model_dump().items()),
    )
    found = find_superintuitionistic(system, caps, _policy(ctx), optimized=optimized)
    click.echo(f"# examined: {found.examined}")
    if output is not None:
        write_findings(output, found, format=cast(Any, fmt))
        click.echo(f"# findings: {len(found)} written to {output}")
    else:
        click.echo(report(found, format=cast(Any, fmt)), nl=False)


@cli.command()
@click.option("--system", "system_file", type=EXISTING_FILE, required=True)
@click.option("--antecedent", "antecedent_texts", multiple=True, help="antecedent A (repeatable)")
@click.option("--negations", is_flag=True, help="also try negated atoms; untranslatable rows show -")
@click.pass_context
@_guarded
def harrop(
    ctx: click.Context, system_file: Path, antecedent_texts: Sequence[str], negations: bool
) -> None:
    """Check the generalised Harrop instance for each antecedent."""
    system = _load_system(ctx, system_file)
    antecedents: List[Formula]
    if antecedent_texts:
        antecedents = [parse_formula(t) for t in antecedent_texts]
    else:
        antecedents = harrop_antecedents(sorted(system.atoms())[:2], include_negations=negations)
    _start(
        ctx,
        {"system": str(system_file), "antecedent": list(antecedent_texts), "negations": negations},
        system=_system_header(system),
    )
    rows = check_harrop_family(system, antecedents, _policy(ctx), strict=not negations)
    cells = [("antecedent", "translation", "verdict")] + [
        (print_formula(r.antecedent), r.translation, "valid" if r.valid else "invalid")
        for r in rows
    ]
    widths = [max(len(c[i]) for c in cells) for i in range(3)]
    for c in cells:
        click.echo("  ".join(cell.ljust(w) for cell, w in zip(c, widths)).rstrip())
    sys.exit(0 if all(r.valid for r in rows) else 1)


@cli.command("report")
@click.option("--findings", "findings_file", type=EXISTING_FILE, required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "csv"]), default="text")
@click.pass_context
@_guarded
def report_cmd(ctx: click.Context, findings_file: Path, fmt: str) -> None:
    """Re-render a findings file."""
    records = read_findings(findings_file)
    _start(ctx, {"findings": str(findings_file), "format": fmt}, findings=len(records))
    click.echo(report(records, format=cast(Any, fmt)), nl=False)


def main() -> None:
    cli(prog_name="ptv")


if __name__ == "__main__":
    main()
