"""Command-line surface for plan design, evaluation, fitting and simulation.

Output encodings (selected with the top-level ``--format`` option or the
``IWSAMPLING_FORMAT`` environment variable):

* ``table``: aligned human-readable columns, probabilities to four
  decimals and average sample numbers to two;
* ``csv``: header row plus one data row per record, floats at full
  round-trip precision, empty field for absent values;
* ``json-like``: a single JSON object ``{"command": ..., "records": [...]}``
  with the same field names and full-precision values.

Exit codes: 0 success, 2 bad flags, 3 infeasible design, 4 bad data file.
"""

from __future__ import annotations

import json
import sys

import click

from .design import (
    DesignOutcome,
    RiskSpec,
    SearchBounds,
    design_double,
    design_group,
    design_single,
    misspec_probabilities,
    percentile_multiplier,
)
from .distributions import LifetimeModel
from .errors import DataError, DomainError
from .fitting import MODEL_ORDER, LifetimeSample, best_by_ks, goodness_table
from .plans import DoublePlan, GroupPlan, SinglePlan, oc_curve
from .simulate import SimConfig, simulate_double, simulate_group, simulate_single
from . import tables as tables_mod

EXIT_INFEASIBLE = 3
EXIT_BAD_DATA = 4

_FOUR_DP = {
    "p_alpha", "p_beta", "p_accept", "accept_rate", "ks",
}
_TWO_DP = {"asn", "adp_asn", "mean_sample_number"}
_FIVE_DP = {"param1", "param2"}


def _human_value(key: str, value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if key in _FOUR_DP:
            return f"{value:.4f}"
        if key in _TWO_DP:
            return f"{value:.2f}"
        if key in _FIVE_DP:
            return f"{value:.5f}"
        if key == "nlc":
            return f"{value:.3f}"
        return f"{value:.6g}"
    return str(value)


def _csv_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit(command: str, records: list[dict], fmt: str) -> None:
    if fmt == "json-like":
        click.echo(json.dumps({"command": command, "records": records}, indent=2))
        return
    if not records:
        if fmt == "csv":
            click.echo("")
        return
    keys = list(records[0].keys())
    if fmt == "csv":
        click.echo(",".join(keys))
        for rec in records:
            click.echo(",".join(_csv_value(rec[k]) for k in keys))
        return
    cells = [[_human_value(k, rec[k]) for k in keys] for rec in records]
    widths = [max(len(k), *(len(row[i]) for row in cells)) for i, k in enumerate(keys)]
    click.echo("  ".join(k.ljust(w) for k, w in zip(keys, widths)))
    for row in cells:
        click.echo("  ".join(v.ljust(w) for v, w in zip(row, widths)))


def _risk_spec(beta, alpha, r1, r2, a, gamma) -> RiskSpec:
    try:
        return RiskSpec(beta=beta, alpha=alpha, r2=r2, a=a, gamma=gamma, r1=r1)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc


def _bounds(n_max, c_max, g_max) -> SearchBounds:
    try:
        return SearchBounds(n_max=n_max, c_max=c_max, g_max=g_max)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc


@click.group()
@click.option(
    "--format", "fmt",
    type=click.Choice(["table", "csv", "json-like"]),
    default="table",
    envvar="IWSAMPLING_FORMAT",
    help="Output encoding (env default: IWSAMPLING_FORMAT).",
)
@click.pass_context
def main(ctx: click.Context, fmt: str) -> None:
    """Acceptance sampling plans for inverse Weibull truncated life tests."""
    ctx.obj = fmt


_spec_options = [
    click.option("--beta", type=float, required=True, help="consumer's risk"),
    click.option("--alpha", type=float, default=0.05, show_default=True, help="producer's risk"),
    click.option("--r1", type=float, default=1.0, show_default=True, help="quality ratio at the consumer point"),
    click.option("--r2", type=float, required=True, help="quality ratio at the producer point"),
    click.option("--a", type=float, required=True, help="test duration over specified median life"),
    click.option("--gamma", type=float, required=True, help="shape parameter"),
]
_bounds_options = [
    click.option("--n-max", type=int, default=1000, show_default=True),
    click.option("--c-max", type=int, default=60, show_default=True),
    click.option("--g-max", type=int, default=5000, show_default=True),
]


def _apply(options):
    def deco(f):
        for opt in reversed(options):
            f = opt(f)
        return f
    return deco


@main.command()
@click.argument("kind", type=click.Choice(["single", "double", "group"]))
@_apply(_spec_options)
@click.option("--r", type=int, default=None, help="units per group (group plans only)")
@_apply(_bounds_options)
@click.pass_obj
def design(fmt, kind, beta, alpha, r1, r2, a, gamma, r, n_max, c_max, g_max):
    """Search the smallest plan meeting both risk constraints."""
    spec = _risk_spec(beta, alpha, r1, r2, a, gamma)
    bounds = _bounds(n_max, c_max, g_max)
    rec = {"kind": kind, "beta": beta, "alpha": alpha, "r1": r1, "r2": r2,
           "a": a, "gamma": gamma}
    if kind == "single":
        out = design_single(spec, bounds)
        plan_fields = ("n", "c")
    elif kind == "double":
        out = design_double(spec, bounds)
        plan_fields = ("n1", "n2", "c1", "c2")
    else:
        if r is None:
            raise click.UsageError("group designs need --r")
        rec["r"] = r
        try:
            out = design_group(spec, r, bounds)
        except DomainError as exc:
            raise click.UsageError(str(exc)) from exc
        plan_fields = ("g", "c")
    rec["feasible"] = out.feasible
    for f in plan_fields:
        rec[f] = getattr(out.plan, f) if out.feasible else None
    rec["asn"] = out.evaluation.asn if out.feasible else None
    rec["p_alpha"] = out.evaluation.p_accept_producer if out.feasible else None
    rec["p_beta"] = out.evaluation.p_accept_consumer if out.feasible else None
    emit(f"design {kind}", [rec], fmt)
    if not out.feasible:
        sys.exit(EXIT_INFEASIBLE)


@main.command()
@click.argument("table", type=int)
@_apply(_bounds_options)
@click.pass_obj
def tables(fmt, table, n_max, c_max, g_max):
    """Regenerate one of the built-in reference design grids (1-5)."""
    bounds = _bounds(n_max, c_max, g_max)
    try:
        rows = tables_mod.generate(table, bounds)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    emit(f"tables {table}", rows, fmt)


@main.command()
@click.argument("data", type=click.Path())
@click.option("--models", default=",".join(MODEL_ORDER), show_default=True,
              help="comma-separated subset of the candidate models")
@click.pass_obj
def fit(fmt, data, models):
    """Fit candidate lifetime models to a failure-time data file."""
    names = [m.strip() for m in models.split(",") if m.strip()]
    for name in names:
        if name not in MODEL_ORDER:
            raise click.UsageError(f"unknown model {name!r}; choose from {MODEL_ORDER}")
    try:
        sample = LifetimeSample.from_text(data)
    except DataError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BAD_DATA)
    results = goodness_table(sample, names)
    best = best_by_ks(results).model_name if results else None
    records = [
        {"model": r.model_name, "param1": r.param1, "param2": r.param2,
         "nlc": r.nlc, "ks": r.ks, "best_ks": r.model_name == best}
        for r in results
    ]
    emit("fit", records, fmt)


def _parse_plan(kind, n, c, n1, n2, c1, c2, g, r):
    try:
        if kind == "single":
            if n is None or c is None:
                raise click.UsageError("single plans need --n and --c")
            return SinglePlan(n, c)
        if kind == "double":
            if None in (n1, n2, c1, c2):
                raise click.UsageError("double plans need --n1 --n2 --c1 --c2")
            return DoublePlan(n1, n2, c1, c2)
        if g is None or r is None or c is None:
            raise click.UsageError("group plans need --g --r --c")
        return GroupPlan(g, r, c)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc


_plan_options = [
    click.option("--n", type=int, default=None, help="sample size (single)"),
    click.option("--c", type=int, default=None, help="acceptance number (single/group)"),
    click.option("--n1", type=int, default=None),
    click.option("--n2", type=int, default=None),
    click.option("--c1", type=int, default=None),
    click.option("--c2", type=int, default=None),
    click.option("--g", type=int, default=None, help="number of groups"),
    click.option("--r", type=int, default=None, help="units per group"),
]


@main.command()
@click.argument("kind", type=click.Choice(["single", "double", "group"]))
@_apply(_plan_options)
@click.option("--gamma", type=float, required=True)
@click.option("--a", type=float, required=True)
@click.option("--ratios", required=True, help="quality ratio grid start:stop:step")
@click.pass_obj
def oc(fmt, kind, n, c, n1, n2, c1, c2, g, r, gamma, a, ratios):
    """Operating characteristic of a plan over a ratio grid."""
    plan = _parse_plan(kind, n, c, n1, n2, c1, c2, g, r)
    parts = ratios.split(":")
    if len(parts) != 3:
        raise click.UsageError("--ratios must look like start:stop:step")
    try:
        start, stop, step = (float(x) for x in parts)
    except ValueError as exc:
        raise click.UsageError(f"bad --ratios value: {exc}") from exc
    if step <= 0 or start <= 0 or stop < start:
        raise click.UsageError("--ratios needs 0 < start <= stop and step > 0")
    count = int((stop - start) / step + 1e-9) + 1
    grid = [start + k * step for k in range(count)]
    try:
        points = oc_curve(plan, gamma, a, grid)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    records = [{"ratio": p.ratio, "p_accept": p.p_accept, "asn": p.asn} for p in points]
    emit(f"oc {kind}", records, fmt)


@main.command()
@click.option("--n1", type=int, required=True)
@click.option("--n2", type=int, required=True)
@click.option("--c1", type=int, required=True)
@click.option("--c2", type=int, required=True)
@click.option("--a", type=float, required=True)
@click.option("--r2", type=float, required=True)
@click.option("--gamma0", type=float, multiple=True,
              help="candidate true shape (repeatable)")
@click.pass_obj
def misspec(fmt, n1, n2, c1, c2, a, r2, gamma0):
    """Acceptance probabilities of a double plan under misspecified shape."""
    plan = _parse_plan("double", None, None, n1, n2, c1, c2, None, None)
    records = []
    for g0 in gamma0:
        try:
            p_beta, p_alpha = misspec_probabilities(plan, a, g0, r2)
        except DomainError as exc:
            raise click.UsageError(str(exc)) from exc
        records.append({"gamma0": g0, "p_beta": p_beta, "p_alpha": p_alpha})
    emit("misspec", records, fmt)


@main.command()
@click.argument("kind", type=click.Choice(["single", "double", "group"]))
@_apply(_plan_options)
@click.option("--gamma", type=float, required=True)
@click.option("--lambda", "lam", type=float, required=True, help="scale parameter")
@click.option("--t0", type=float, required=True, help="censoring time")
@click.option("--reps", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_obj
def simulate(fmt, kind, n, c, n1, n2, c1, c2, g, r, gamma, lam, t0, reps, seed):
    """Monte Carlo run of the actual truncated life-test procedure."""
    plan = _parse_plan(kind, n, c, n1, n2, c1, c2, g, r)
    try:
        config = SimConfig(LifetimeModel(gamma, lam), t0, reps, seed)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    runner = {
        "single": simulate_single, "double": simulate_double, "group": simulate_group,
    }[kind]
    rep = runner(plan, config)
    rec = {
        "kind": kind, "gamma": gamma, "lambda": lam, "t0": t0,
        "reps": reps, "seed": seed,
        "accept_rate": rep.accept_rate,
        "accept_rate_stderr": rep.accept_rate_stderr,
        "mean_sample_number": rep.mean_sample_number,
        "accepts": rep.decisions["accept"],
        "rejects": rep.decisions["reject"],
        "second_samples": rep.decisions["second_sample"],
    }
    emit(f"simulate {kind}", [rec], fmt)


@main.command("convert-percentile")
@click.option("--a-tilde", type=float, required=True,
              help="duration multiplier on the specified percentile life")
@click.option("--gamma", type=float, required=True)
@click.option("--p", type=float, required=True, help="percentile level in (0, 1)")
@click.pass_obj
def convert_percentile(fmt, a_tilde, gamma, p):
    """Median-table multiplier equivalent to a percentile-based test."""
    try:
        a = percentile_multiplier(a_tilde, gamma, p)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    emit("convert-percentile", [{"a_tilde": a_tilde, "gamma": gamma, "p": p, "a": a}], fmt)


if __name__ == "__main__":
    main()
