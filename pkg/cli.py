"""
Command-line front end. Every subcommand writes a table to stdout as CSV
(default) or JSON; logs and errors go to stderr.

    python cli.py rho 3
    python cli.py sum 10 --method hyperbola
    python cli.py residuals --grid 1e2:1e10:25
    python cli.py fit-form so5 --grid 1e4:1e10:4 --format json
"""
import argparse
import json
import logging
import math
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

import pandas as pd
from pydantic import BaseModel, ConfigDict, PositiveInt, model_validator

import asymptotics
import generic_forms
import lattice_core
import quadrature
import witten_zeta
from errors import UsageError, WittenCountError
from lattice_core import CountMethod
from settings import get_settings

logger = logging.getLogger(__name__)

# residuals with --method auto switch from brute force to the hyperbola count here
AUTO_BRUTE_BELOW = 10**6

Row = Dict[str, Any]


class GridSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    x_min: PositiveInt
    x_max: PositiveInt
    points_per_decade: PositiveInt = 25

    @model_validator(mode="after")
    def _ordered(self) -> "GridSpec":
        if not self.x_min < self.x_max:
            raise UsageError(f"grid needs x_min < x_max, got {self.x_min} >= {self.x_max}")
        return self


def geometric_grid(spec: GridSpec) -> List[int]:
    """Geometric points from x_min to x_max, rounded to integers, deduplicated, increasing."""
    lo, hi = math.log10(spec.x_min), math.log10(spec.x_max)
    steps = math.floor((hi - lo) * spec.points_per_decade + 1e-9)
    xs = {round(10 ** (lo + i / spec.points_per_decade)) for i in range(steps + 1)}
    xs.update((spec.x_min, spec.x_max))
    return sorted(x for x in xs if spec.x_min <= x <= spec.x_max)


def _parse_int(text: str) -> int:
    """Integer literal, also in scientific form such as 1e10."""
    try:
        value = Decimal(text.strip())
    except InvalidOperation as exc:
        raise UsageError(f"not a number: {text!r}") from exc
    if value != value.to_integral_value():
        raise UsageError(f"not an integer: {text!r}")
    return int(value)


def _int_arg(text: str) -> int:
    try:
        return _parse_int(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(exc.detail) from exc


def parse_grid(text: str) -> GridSpec:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"grid must be x_min:x_max[:points_per_decade], got {text!r}")
    values = [_parse_int(p) for p in parts]
    if min(values) < 1:
        raise UsageError(f"grid values must be positive, got {text!r}")
    if len(values) == 2:
        values.append(get_settings().points_per_decade)
    return GridSpec(x_min=values[0], x_max=values[1], points_per_decade=values[2])


def read_grid_file(path: str) -> List[int]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read grid file {path}: {exc.strerror}") from exc
    return sorted({_parse_int(line) for line in lines if line.strip()})


def _grid_from_args(args: argparse.Namespace) -> List[int]:
    if args.grid_file:
        grid = read_grid_file(args.grid_file)
        if not grid:
            raise UsageError(f"grid file {args.grid_file} has no values")
        return grid
    if args.grid:
        return geometric_grid(parse_grid(args.grid))
    raise UsageError("either --grid or --grid-file is required")


def write_rows(rows: List[Row], fmt: str, stream: TextIO) -> None:
    if fmt == "json":
        stream.write(json.dumps(rows, indent=2) + "\n")
        return
    pd.DataFrame(rows).to_csv(stream, index=False, float_format="%.17g", lineterminator="\n")


def _dump(model: BaseModel, **extra: Any) -> Row:
    row = model.model_dump(mode="json")
    row.update(extra)
    return row


# --- subcommand handlers ---

def _cmd_rho(args) -> List[Row]:
    return [{"n": args.n, "rho": lattice_core.rho(args.n)}]


def _cmd_sum(args) -> List[Row]:
    return [{"x": args.x, "count": lattice_core.summatory(args.x, CountMethod(args.method))}]


def _cmd_residuals(args) -> List[Row]:
    grid = _grid_from_args(args)
    if args.method == "auto":
        low = [x for x in grid if x < AUTO_BRUTE_BELOW]
        high = [x for x in grid if x >= AUTO_BRUTE_BELOW]
        records = []
        if low:
            records += asymptotics.residual_series(low, CountMethod.BRUTE)
        if high:
            records += asymptotics.residual_series(high, CountMethod.HYPERBOLA)
    else:
        records = asymptotics.residual_series(grid, CountMethod(args.method))
    if any(100 <= r.x <= 10**4 for r in records) and records[-1].x > 10**4:
        logger.info("no-growth check over decades: %s", asymptotics.residual_growth_ok(records))
    return [_dump(r) for r in records]


def _cmd_asym(args) -> List[Row]:
    record = asymptotics.summatory_record(args.x, CountMethod.HYPERBOLA)
    return [_dump(record, tauberian_ratio=asymptotics.tauberian_ratio(args.x))]


def _cmd_identity(args) -> List[Row]:
    return [_dump(quadrature.identity_check(args.tol))]


def _cmd_fexp(args) -> List[Row]:
    check = quadrature.f_expansion_check(args.y)
    return [_dump(check, bound=args.y**3.5)]


def _cmd_zeta_half(args) -> List[Row]:
    value = quadrature.zeta_half_integral(args.T)
    oracle = float(asymptotics.constants().zeta_half)
    return [{"T": args.T, "value": value, "oracle": oracle, "abs_difference": abs(value - oracle)}]


def _cmd_wzeta(args) -> List[Row]:
    direct = witten_zeta.zeta_su3_direct(args.s, args.cutoff)
    rows = [_dump(direct, order="direct")]
    if args.cutoff > lattice_core.RHO_TABLE_MAX:
        logger.info("cutoff %d is above the rho table limit %d; by-dimension sum skipped",
                    args.cutoff, lattice_core.RHO_TABLE_MAX)
        return rows
    by_rho = witten_zeta.zeta_su3_via_rho(args.s, args.cutoff)
    return rows + [_dump(by_rho, order="by_dimension")]


def _cmd_divisor(args) -> List[Row]:
    return [{
        "x": args.x,
        "count": lattice_core.divisor_summatory(args.x),
        "scaled_residual": asymptotics.divisor_residual(args.x),
    }]


def _cmd_count_form(args) -> List[Row]:
    form = generic_forms.parse_form(args.form)
    return [{"form": form.spec(), "x": args.x, "count": generic_forms.count_under(form, args.x)}]


def _cmd_fit_form(args) -> List[Row]:
    form = generic_forms.parse_form(args.form)
    fit = generic_forms.exponent_fit(form, _grid_from_args(args))
    row = {
        "form": form.spec(),
        "slope": fit.slope,
        "expected_slope": 2 / form.degree,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "points": len(fit.grid),
    }
    if args.format == "json":
        row["grid"] = [list(pair) for pair in fit.grid]
    return [row]


def _cmd_rep_count(args) -> List[Row]:
    return [{"n": n, "r": r} for n, r in enumerate(lattice_core.rep_count_r(args.n))]


def _cmd_form_reps(args) -> List[Row]:
    form = generic_forms.parse_form(args.form)
    return [{"n": n, "count": c} for n, c in enumerate(generic_forms.rep_count(form, args.n))]


def _cmd_sqrt_sum(args) -> List[Row]:
    return [_dump(asymptotics.sqrt_sum_check(args.x))]


def _cmd_constants(args) -> List[Row]:
    c = asymptotics.constants()
    names = ["euler_gamma", "zeta_half", "gamma_one_third", "c1", "c2", "residue_23"]
    return [{"name": name, "value": str(getattr(c, name)), "provenance": c.provenance.get(name, "")} for name in names]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_help(sys.stderr)
        self.exit(UsageError.exit_code, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv", help="Output format (default: csv).")
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=None,
        help="Logging level for stderr (default from settings).",
    )

    parser = _Parser(
        prog="witten-count",
        description="Exact counts and asymptotic checks for irreducible su(3) representations.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(handler=handler)
        return p

    p = add("rho", _cmd_rho, "number of irreducible representations of dimension N")
    p.add_argument("n", type=_int_arg)

    p = add("sum", _cmd_sum, "summatory function S(X)")
    p.add_argument("x", type=_int_arg)
    p.add_argument("--method", choices=[m.value for m in CountMethod], default=CountMethod.HYPERBOLA.value)

    p = add("residuals", _cmd_residuals, "residual diagnostics over a geometric grid")
    p.add_argument("--grid", help="x_min:x_max[:points_per_decade]")
    p.add_argument("--grid-file", help="file with one x per line")
    p.add_argument("--method", choices=["auto"] + [m.value for m in CountMethod], default="auto")

    p = add("asym", _cmd_asym, "S(X) against the two-term expansion")
    p.add_argument("x", type=_int_arg)

    p = add("identity", _cmd_identity, "numerical check of the F(0) integral identity")
    p.add_argument("--tol", type=float, default=None)

    p = add("fexp", _cmd_fexp, "deviation of F(Y) from F(0) + 2 sqrt(Y)")
    p.add_argument("y", type=float)

    p = add("zeta-half", _cmd_zeta_half, "zeta(1/2) from the fractional-part integral cut at T")
    p.add_argument("T", type=_int_arg)

    p = add("wzeta", _cmd_wzeta, "partial sums of the su(3) Witten zeta function")
    p.add_argument("s", type=float)
    p.add_argument("--cutoff", type=_int_arg, required=True)

    p = add("divisor", _cmd_divisor, "divisor summatory function and its scaled residual")
    p.add_argument("x", type=_int_arg)

    p = add("count-form", _cmd_count_form, "lattice points with p(m, n) <= X for a homogeneous form")
    p.add_argument("form", help="preset (su3, so5) or d:D:a_0,...,a_d")
    p.add_argument("x", type=_int_arg)

    p = add("fit-form", _cmd_fit_form, "log-log growth exponent of count-form over a grid")
    p.add_argument("form")
    p.add_argument("--grid")
    p.add_argument("--grid-file")

    p = add("rep-count", _cmd_rep_count, "r(0..N) from the product generating function")
    p.add_argument("n", type=_int_arg)

    p = add("form-reps", _cmd_form_reps, "representation counts 0..N for a form's dimension family")
    p.add_argument("form")
    p.add_argument("n", type=_int_arg)

    p = add("sqrt-sum", _cmd_sqrt_sum, "sum of sqrt(n^2 + 8X/n) against its expansion")
    p.add_argument("x", type=_int_arg)

    add("constants", _cmd_constants, "frozen constants with provenance")
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """Run one subcommand; returns 0 on success, 2 on usage errors, 1 on computation errors."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        level=(args.log_level or get_settings().log_level).upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
    try:
        rows = args.handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc.detail}", file=sys.stderr)
        return exc.exit_code
    except WittenCountError as exc:
        print(f"{parser.prog}: {type(exc).__name__}: {exc.detail}", file=sys.stderr)
        return exc.exit_code
    write_rows(rows, args.format, stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
