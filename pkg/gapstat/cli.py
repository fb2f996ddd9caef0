"""Command-line front end: ``gapstat <command> [options]``."""

from __future__ import annotations

import asyncio
import functools
import sys
from pathlib import Path
from typing import Optional

import click
from loguru import logger

from .base import ConvergentOverflow
from .config import ExperimentConfig, load_config_file, resolve_config
from .discrepancy import (
    gap_based_bound,
    pc_based_bound,
    star_discrepancy_1d,
    star_discrepancy_md,
)
from .gaps import UNDETERMINED, gap_spectrum, obstructions_from_spectra
from .generators import generate, parse_sequence_spec, with_flags
from .pair_correlation import deviation_statistic, pair_correlation
from .reporting import (
    archive_results,
    emit_report,
    exit_code,
    merge_reports,
    parse_report,
    points_to_csv,
    rows_to_csv,
)
from .suites import SuiteOptions, run_suites, verification_suites


def _configure_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")
    logger.enable("gapstat")


def _usage_errors(fn):
    """Report ValueError (bad specs, grids, budgets) and convergent overflow as usage errors."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ValueError, ConvergentOverflow) as ex:
            raise click.UsageError(str(ex)) from ex

    return wrapper


def _config(ctx: click.Context, **flags) -> ExperimentConfig:
    # An unset boolean flag leaves the config file value in place
    given = {key: value for key, value in flags.items() if value is not False}
    return resolve_config(ctx.obj.get("config_file"), given)


def _points(config: ExperimentConfig):
    spec = with_flags(
        parse_sequence_spec(config.seq),
        extended_precision=config.extended_precision,
        include_zero=config.include_zero,
    )
    return generate(spec, max(config.n.values))


def _emit(text: str, output: Optional[str], summary: str) -> None:
    if output:
        Path(output).write_text(text)
        click.echo(f"{summary}; wrote {output}")
    else:
        click.echo(text, nl=False)
        click.echo(summary, err=True)


def sequence_options(fn):
    for decorator in reversed(
        [
            click.option("--seq", help="Sequence, e.g. kronecker:phi, vdc:b=2, random:seed=7"),
            click.option("--n", "n", help="N or N grid: 1000, 100,200, a:b:k, fib:max"),
            click.option("--output", "-o", help="Write the data to this file"),
            click.option("--extended-precision", is_flag=True),
            click.option("--zero", "include_zero", is_flag=True,
                         help="Prepend the zeroth van der Corput element"),
        ]
    ):
        fn = decorator(fn)
    return fn


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON config file; keys mirror the long option names")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
@click.pass_context
def cli(ctx, config_path, verbose):
    """Gap structure, pair correlations and discrepancy of low-discrepancy sequences."""
    _configure_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj["config_file"] = load_config_file(config_path) if config_path else {}


@cli.command("generate")
@sequence_options
@click.pass_context
@_usage_errors
def generate_points(ctx, seq, n, output, extended_precision, include_zero):
    """Write the first N points as CSV."""
    config = _config(
        ctx,
        seq=seq,
        n=n,
        output=output,
        extended_precision=extended_precision,
        include_zero=include_zero,
    )
    ps = _points(config)
    _emit(points_to_csv(ps), config.output, f"{ps.N} points of {config.seq}")


@cli.command()
@sequence_options
@click.option("--classify", is_flag=True, help="Label gap families and check obstructions")
@click.option("--alpha", type=float, help="Exponent for --classify")
@click.option("--tolerance", "grouping_tolerance", type=float, help="Gap grouping tolerance")
@click.pass_context
@_usage_errors
def gaps(ctx, seq, n, output, extended_precision, include_zero, classify, alpha,
         grouping_tolerance):
    """Gap lengths and multiplicities for every N of the grid.

    Columns N, k, L_k, N_k and N^alpha*L_k; --classify adds a label column.
    """
    config = _config(
        ctx,
        seq=seq,
        n=n,
        output=output,
        alpha=alpha,
        grouping_tolerance=grouping_tolerance,
        extended_precision=extended_precision,
        include_zero=include_zero,
    )
    ps = _points(config)
    spectra = [gap_spectrum(ps.head(N), config.grouping_tolerance) for N in config.n.values]
    header = ["N", "k", "L_k", "N_k", "N^alpha*L_k"]
    rows = [
        [spectrum.N, k, length, count, spectrum.N**config.alpha * length]
        for spectrum in spectra
        for k, (length, count) in enumerate(spectrum.gaps, start=1)
    ]
    if not classify:
        _emit(rows_to_csv(header, rows), config.output, f"{len(spectra)} spectra")
        return
    report = obstructions_from_spectra(spectra, config.alpha)
    # (position in the grid, length) -> label of the family passing through it
    labels = {
        (i, length): family.label
        for family in report.classification.families
        for i, length in enumerate(family.lengths)
    }
    positions = {spectrum.N: i for i, spectrum in enumerate(spectra)}
    for row in rows:
        row.append(labels.get((positions[row[0]], row[2]), UNDETERMINED))
    text = rows_to_csv(header + ["label"], rows)
    summary = (
        f"obstructions {report.status} (1: {report.obstruction_1}, 2: {report.obstruction_2})"
    )
    if report.classification.reason:
        summary += f": {report.classification.reason}"
    _emit(text, config.output, summary)


@cli.command()
@sequence_options
@click.option("--alpha", type=float, help="Exponent, 0 < alpha <= 1/d")
@click.option("--s", "s", help="Scale values, e.g. 0.5,1,2")
@click.option("--strict", is_flag=True, help="Count pairs strictly inside")
@click.option("--deviation", "deviation_k", type=int, help="Report F(K, N) instead")
@click.pass_context
@_usage_errors
def paircorr(ctx, seq, n, output, extended_precision, include_zero, alpha, s, strict,
             deviation_k):
    """Pair correlation F(s) at radius s / N^alpha for every N of the grid."""
    config = _config(
        ctx,
        seq=seq,
        n=n,
        output=output,
        alpha=alpha,
        s=s,
        strict=strict,
        extended_precision=extended_precision,
        include_zero=include_zero,
    )
    ps = _points(config)
    if deviation_k is not None:
        rows = [
            (N, deviation_k, config.alpha, statistic.value)
            for N in config.n.values
            for statistic in [deviation_statistic(ps.head(N), deviation_k, config.alpha)]
        ]
        _emit(rows_to_csv(["N", "K", "alpha", "F"], rows), config.output, f"{len(rows)} rows")
        return
    rows = []
    for N in config.n.values:
        for value in config.s:
            point = pair_correlation(ps.head(N), value, config.alpha, config.strict)
            rows.append(
                (N, value, config.alpha, point.raw_count, point.value, point.saturated)
            )
    header = ["N", "s", "alpha", "raw_count", "value", "saturated"]
    _emit(rows_to_csv(header, rows), config.output, f"{len(rows)} rows")


def _pc_alpha(text: str) -> float:
    key, sep, value = text.partition("=")
    if not sep:
        key, value = "alpha", text
    if key.strip() != "alpha":
        raise ValueError(f"--pc-bound expects alpha=<a>, got '{text}'")
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"--pc-bound expects alpha=<a>, got '{text}'") from None


@cli.command()
@sequence_options
@click.option("--gap-bound", is_flag=True, help="Compare with the finite-gap bound")
@click.option("--pc-bound", "pc_bound", help="Compare with the pair-correlation bound, alpha=<a>")
@click.pass_context
@_usage_errors
def discrepancy(ctx, seq, n, output, extended_precision, include_zero, gap_bound, pc_bound):
    """Exact star (and for d = 1 extreme) discrepancy for every N of the grid."""
    config = _config(
        ctx,
        seq=seq,
        n=n,
        output=output,
        extended_precision=extended_precision,
        include_zero=include_zero,
    )
    ps = _points(config)
    prefixes = [ps.head(N) for N in config.n.values]
    if gap_bound:
        header = ["N", "K", "R", "epsilon", "bound", "measured_star", "satisfied"]
        rows = []
        for prefix in prefixes:
            report = gap_based_bound(prefix, config.grouping_tolerance)
            rows.append(
                (report.N, report.K, report.R, report.epsilon, report.bound,
                 report.measured_star, report.satisfied)
            )
    elif pc_bound:
        alpha = _pc_alpha(pc_bound)
        header = ["N", "alpha", "K", "F", "bound", "measured", "satisfied", "below_n0_candidate"]
        rows = []
        for prefix in prefixes:
            report = pc_based_bound(prefix, alpha)
            rows.append(
                (report.N, report.alpha, report.K, report.F_value, report.bound,
                 report.measured, report.satisfied, report.below_n0_candidate)
            )
    else:
        header = ["N", "star", "extreme", "witness"]
        rows = []
        for prefix in prefixes:
            report = star_discrepancy_1d(prefix) if prefix.d == 1 else star_discrepancy_md(prefix)
            rows.append((report.N, report.star, report.extreme, report.witness.describe()))
    _emit(rows_to_csv(header, rows), config.output, f"{len(rows)} rows")


def _finish(ctx: click.Context, results, output, format, include_timings, db, config) -> None:
    text = emit_report(results, format, include_timings)
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)
    if db:
        run_id = archive_results(results, db, config)
        click.echo(f"archived {run_id} in {db}", err=True)
    for result in results:
        click.echo(
            f"{result.suite_id}: {result.status} ({result.passed} passed, "
            f"{result.failures} failed, {result.inconclusive} inconclusive)",
            err=not output,
        )
    inconclusive = sum(result.inconclusive for result in results)
    if inconclusive:
        click.echo(f"warning: {inconclusive} inconclusive cases", err=True)
    ctx.exit(exit_code(results))


@cli.command()
@click.argument("suite_ids", nargs=-1)
@click.option("--trials", type=int, help="Random instances per suite")
@click.option("--max-n", "max_n", type=int, help="Largest N checked")
@click.option("--seed", type=int, help="Seed for random instances")
@click.option("--threads", type=int, help="Cases run at once (env GAPSTAT_THREADS)")
@click.option("--format", "format", type=click.Choice(["json", "csv"]))
@click.option("--output", "-o", help="Write the report to this file")
@click.option("--timings", is_flag=True, help="Include runtimes in the report")
@click.option("--db", help="Also archive the run in this SQLite database")
@click.option("--list", "list_suites", is_flag=True, help="List suites and exit")
@click.pass_context
@_usage_errors
def verify(ctx, suite_ids, trials, max_n, seed, threads, format, output, timings, db,
           list_suites):
    """Run verification suites (all of them when none are named)."""
    if list_suites:
        for suite_id, suite in sorted(verification_suites().items()):
            click.echo(f"{suite_id}: {suite.description}")
        return
    file_values = ctx.obj.get("config_file") or {}
    if format is None and "format" not in file_values:
        format = "json"
    config = _config(ctx, seed=seed, threads=threads, format=format, output=output)
    options = SuiteOptions(trials=trials, max_n=max_n, seed=config.seed)
    results = asyncio.run(run_suites(suite_ids, options, config.threads))
    run_config = {
        "suites": sorted(suite_ids),
        "trials": trials,
        "max_n": max_n,
        "seed": config.seed,
    }
    _finish(ctx, results, config.output, config.format, timings, db, run_config)


@cli.command()
@click.argument("inputs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "format", type=click.Choice(["json", "csv"]), default="json")
@click.option("--output", "-o", help="Write the merged report to this file")
@click.option("--timings", is_flag=True, help="Include runtimes in the report")
@click.option("--db", help="Archive the merged results in this SQLite database")
@click.pass_context
@_usage_errors
def report(ctx, inputs, format, output, timings, db):
    """Merge reports written by ``verify`` and re-emit them."""
    documents = [
        parse_report(Path(path).read_text(), "csv" if path.endswith(".csv") else "json")
        for path in inputs
    ]
    results = merge_reports(documents)
    _finish(ctx, results, output, format, timings, db, {"inputs": list(inputs)})


def run_command(argv=None) -> int:
    """Run the CLI and return its exit code.

    0 ok, 1 suite failure or a failed numerical check (ThreeGapMismatch and
    other ArithmeticError), 2 usage error (ValueError, ConvergentOverflow).
    """
    try:
        result = cli.main(args=argv, prog_name="gapstat", standalone_mode=False)
    except click.ClickException as ex:
        ex.show()
        return ex.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except (ValueError, ConvergentOverflow) as ex:
        click.echo(f"Error: {ex}", err=True)
        return 2
    except ArithmeticError as ex:
        logger.opt(exception=ex).debug("numerical check failed")
        click.echo(f"Error: {type(ex).__name__}: {ex}", err=True)
        return 1
    return result if isinstance(result, int) else 0


def main():
    sys.exit(run_command())
