"""Command-line surface: evaluate symbols, run lemma sweeps, build
shadows, compute TV/RT growth series, and emit CSV (plus optional
figures).

Exit codes: 0 success, 1 property violation, 2 usage or spec error.
All floats print with 15 significant digits for oracle diffing.
"""

from __future__ import annotations

import math
import os
import sys
from dataclasses import dataclass

import click

from . import __version__
from .errors import ConsistencyError, DomainError, RangeError, SpecError
from .hyperbolic import V8
from .invariants import GrowthSeries, diagonal_growth_series, tv_growth_series
from .oracle import tv_naive
from .qarith import RootContext
from .shadow import GluingSpec, build_shadow
from .sixj import (
    Tuple6,
    dihedral_angles,
    growth_rate,
    hypotheses_ab,
    sixj,
    summand_signs,
    violating_face,
)
from .sweeps import diagonal_sign_sweep, realness_sweep, summand_sign_sweep

CSV_HEADER = "r,log_value,growth,target,abs_error"
CSV_NOTE = "# shadow state-sum invariants at q=exp(2*pi*i/r); normalization C_r = 1"

# exhaustive summand-sign sweeps get expensive past this r; beyond it the
# lemmas command restricts that check to the diagonal tuple family
SUMMAND_SWEEP_RMAX = 31


@dataclass
class RunConfig:
    """Validated options of one series run: r values (odd, >= 5), the
    gluing shape, matching source, worker count, output sinks, and the
    oracle/precision switches."""

    r_values: list
    k: int = 0
    l: int = 0
    matching: str | None = None
    threads: int = 1
    out: str | None = None
    plot: str | None = None
    naive: bool = False
    extended: bool = False

    def spec(self) -> GluingSpec:
        return _load_spec(self.k, self.l, self.matching)


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _parse_r_range(r: int | None, r_range: str | None) -> list:
    if (r is None) == (r_range is None):
        raise click.UsageError("give exactly one of --r or --r-range start:stop:step")
    if r is not None:
        values = [r]
    else:
        try:
            start, stop, step = (int(p) for p in r_range.split(":"))
        except ValueError:
            raise click.UsageError(f"--r-range must be start:stop:step, got {r_range!r}")
        if step <= 0 or step % 2:
            raise click.UsageError("--r-range step must be a positive even integer")
        values = list(range(start, stop + 1, step))
        if not values:
            raise click.UsageError(f"empty r range {r_range!r}")
    for v in values:
        if v < 5 or v % 2 == 0:
            raise click.UsageError(f"r values must be odd and >= 5, got {v}")
    return values


def _default_threads() -> int:
    env = os.environ.get("SHADOWSUM_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def _load_spec(k: int, l: int, matching: str | None) -> GluingSpec:
    if matching is None or matching == "auto":
        return GluingSpec.auto(k, l)
    return GluingSpec.load(matching)


def _write_series(series: GrowthSeries, out: str | None) -> None:
    lines = [CSV_NOTE, CSV_HEADER]
    for rec in series.records:
        if rec.growth is None:
            lines.append(f"{rec.r},nan,nan,{_fmt(rec.target)},nan")
        else:
            lines.append(
                f"{rec.r},{_fmt(rec.log_value)},{_fmt(rec.growth)},"
                f"{_fmt(rec.target)},{_fmt(rec.abs_error)}"
            )
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
        click.echo(f"wrote {len(series.records)} rows to {out}")
    else:
        click.echo(text, nl=False)


def _maybe_plot(series: GrowthSeries, plot: str | None) -> None:
    if plot:
        from .plotting import plot_growth_series

        plot_growth_series(series, plot)
        click.echo(f"wrote figure to {plot}")


class _OrderedGroup(click.Group):
    def list_commands(self, ctx):
        return list(self.commands)


@click.group(cls=_OrderedGroup, help=__doc__)
@click.version_option(__version__)
def main() -> None:
    pass


@main.command("sixj")
@click.option("--r", "r", type=int, required=True, help="Odd root order r >= 5.")
@click.option("--tuple", "tuple_str", required=True, help="Six comma-separated colors a1,...,a6.")
@click.option("--extended", is_flag=True, help="Use 80-bit extended-precision tables.")
def cmd_sixj(r: int, tuple_str: str, extended: bool) -> None:
    """Evaluate one quantum 6j-symbol with growth and angle diagnostics."""
    _parse_r_range(r, None)
    try:
        entries = tuple(int(p) for p in tuple_str.split(","))
        t = Tuple6(entries)
    except (ValueError, DomainError) as exc:
        raise click.UsageError(f"bad --tuple: {exc}")
    bad = violating_face(r, t)
    if bad is not None:
        face, why = bad
        click.echo(f"not admissible at r={r}: face {face} {why}", err=True)
        sys.exit(2)
    ctx = RootContext(r, extended=extended)
    val = sixj(ctx, t)
    click.echo(f"tuple: {t.entries}  r={r}")
    click.echo(f"phase_quarter: {val.phase_quarter}")
    click.echo(f"sign: {val.sign:+d}" if val.sign else "sign: 0 (exact zero)")
    click.echo(f"log_mag: {_fmt(float(val.log_mag))}")
    if val.sign and float(val.log_mag) < 709.0:
        z = val.to_complex()
        dec = _fmt(z.real) if val.phase_quarter == 0 else f"{_fmt(z.imag)}*i"
        click.echo(f"value: {dec}")
    else:
        click.echo("value: (not representable as a double)")
    if val.sign:
        click.echo(f"growth_rate: {_fmt(growth_rate(ctx, t))}  (v8 = {_fmt(V8)})")
    click.echo(f"window_hypotheses: {hypotheses_ab(r, t)}")
    alphas, flag = dihedral_angles(r, t)
    click.echo("dihedral_angles: " + ", ".join(_fmt(a) for a in alphas))
    click.echo(f"hyperideal: {flag}")
    click.echo(f"summand_signs: {summand_signs(ctx, t)}")


@main.command("lemmas")
@click.option("--r", "r", type=int, default=None, help="Single odd r.")
@click.option("--r-range", "r_range", default=None, help="start:stop:step over odd r.")
def cmd_lemmas(r: int | None, r_range: str | None) -> None:
    """Run the realness, diagonal-sign, and summand-sign sweeps.

    The summand-sign sweep is exhaustive over the T/Q window for
    r <= 31 and restricted to the diagonal tuple family beyond that.
    """
    values = _parse_r_range(r, r_range)
    failed = False
    for rv in values:
        ctx = RootContext(rv)
        reports = [realness_sweep(rv, ctx), diagonal_sign_sweep(rv, ctx)]
        if rv <= SUMMAND_SWEEP_RMAX:
            reports.append(summand_sign_sweep(rv, ctx))
        else:
            reports.append(_diagonal_summand_report(rv, ctx))
        for rep in reports:
            status = "pass" if rep.ok else "FAIL"
            note = f"  [{rep.notes}]" if rep.notes else ""
            click.echo(f"r={rv:5d}  {rep.name:<14} {status}  checked={rep.checked}{note}")
            for v in rep.violations[:5]:
                click.echo(f"    violation: {v}", err=True)
            failed |= not rep.ok
    sys.exit(1 if failed else 0)


def _diagonal_summand_report(r: int, ctx: RootContext):
    from .invariants import diagonal_color
    from .sweeps import SweepReport

    n = diagonal_color(r)
    rep = SweepReport("summand-sign", r, 0, notes="diagonal family only")
    for m in range(n // 2, r - 1 - n // 2):
        entries = (n, m, m, n, m, m)
        signs = {s for s in summand_signs(ctx, entries) if s != 0}
        rep.checked += 1
        if len(signs) > 1:
            rep.violations.append(entries)
    return rep


@main.command("tv")
@click.option("--k", type=int, required=True, help="Number of S pieces (even).")
@click.option("--l", type=int, required=True, help="Number of A pieces.")
@click.option("--matching", default=None, help="Gluing spec JSON file, or 'auto'.")
@click.option("--r", "r", type=int, default=None)
@click.option("--r-range", "r_range", default=None)
@click.option("--out", default=None, help="CSV output path (stdout otherwise).")
@click.option("--plot", default=None, help="Also render a growth figure to this path.")
@click.option("--threads", type=int, default=None, help="Worker processes (env SHADOWSUM_THREADS).")
@click.option("--naive", is_flag=True, help="Use the brute-force oracle path (small r only).")
@click.option("--extended", is_flag=True, help="Use 80-bit extended-precision tables.")
def cmd_tv(k, l, matching, r, r_range, out, plot, threads, naive, extended) -> None:
    """Turaev-Viro growth series over all link colorings."""
    cfg = RunConfig(
        r_values=_parse_r_range(r, r_range),
        k=k,
        l=l,
        matching=matching,
        threads=threads if threads is not None else _default_threads(),
        out=out,
        plot=plot,
        naive=naive,
        extended=extended,
    )
    try:
        if cfg.naive:
            series = _tv_series_naive(cfg.spec(), cfg.r_values)
        else:
            series = tv_growth_series(cfg.spec(), cfg.r_values, threads=cfg.threads, extended=cfg.extended)
    except (SpecError, DomainError, RangeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except ConsistencyError as exc:
        click.echo(f"property violation: {exc}", err=True)
        sys.exit(1)
    _write_series(series, cfg.out)
    _maybe_plot(series, cfg.plot)


def _tv_series_naive(spec: GluingSpec, r_values) -> GrowthSeries:
    from .hyperbolic import additivity_target
    from .invariants import GrowthRecord

    g = build_shadow(spec)
    series = GrowthSeries("tv-naive", spec.k, spec.l, additivity_target(spec.k, spec.l))
    for rv in r_values:
        val = tv_naive(g, rv)
        lv = math.log(val)
        series.append(GrowthRecord(rv, lv, 2.0 * math.pi / rv * lv, series.target))
    return series


@main.command("diagonal")
@click.option("--k", type=int, required=True, help="Number of S pieces (even).")
@click.option("--l", type=int, required=True, help="Number of A pieces.")
@click.option("--matching", default=None, help="Gluing spec JSON file, or 'auto'.")
@click.option("--r", "r", type=int, default=None)
@click.option("--r-range", "r_range", default=None)
@click.option("--out", default=None, help="CSV output path (stdout otherwise).")
@click.option("--plot", default=None, help="Also render a growth figure to this path.")
@click.option("--extended", is_flag=True, help="Use 80-bit extended-precision tables.")
def cmd_diagonal(k, l, matching, r, r_range, out, plot, extended) -> None:
    """Diagonal-coloring growth series at (4*pi/r) scaling; reaches large r."""
    cfg = RunConfig(
        r_values=_parse_r_range(r, r_range),
        k=k,
        l=l,
        matching=matching,
        out=out,
        plot=plot,
        extended=extended,
    )
    try:
        series = diagonal_growth_series(cfg.spec(), cfg.r_values, extended=cfg.extended)
    except (SpecError, DomainError, RangeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except ConsistencyError as exc:
        click.echo(f"property violation: {exc}", err=True)
        sys.exit(1)
    _write_series(series, cfg.out)
    _maybe_plot(series, cfg.plot)


if __name__ == "__main__":
    main()
