"""
Command-line interface for cuspjac.

Usage:
    cuspjac structure 481 --l 3              # l-primary torsion of J_0(N)_m
    cuspjac structure 481 --l 3 --verify     # same, checked against the lattice oracle
    cuspjac order 11 1:-1                    # order of P_1 - P_11
    cuspjac order 245 z:49                   # order of Z(49)
    cuspjac eta-div 11 1:12 11:-12           # divisor of an eta quotient
    cuspjac cusps 45                         # cusps of X_0(45) by level
    cuspjac verify --range 15..105           # formula against oracle, every admissible l
    cuspjac table 3..105 --l 5 --out t.csv   # one row per N
"""

from __future__ import annotations

import csv
import io
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import click

from .arith import divisors, is_prime
from .cusp_lattice import C_vector, DivisorVector, cusp_count, cusp_table, degree_check
from .etaq import EtaExponentVector, div_of_eta, is_modular, order_of_divisor
from .generators import HypothesisError, prime_ordering, z_vector
from .kernel import check_torsion_hypotheses, torsion_structure
from .oracle import verify

__all__ = ["OutputRecord", "cli", "main", "parse_coefficients", "parse_range"]

CSV_COLUMNS = ["N", "l", "d", "epsilon", "valuation", "order", "checked"]
L_BOUND = 50

COEFF_HELP = (
    "Coefficients as d:a pairs (a times P_d), z:d for Z(d), c:d for C_d, "
    "optionally scaled as k*z:d or k*c:d. A single token of sigma_0(N) "
    "colon-separated integers is read as the full vector over ascending "
    "divisors; 0 is the zero divisor."
)


@dataclass(frozen=True)
class OutputRecord:
    """One torsion structure as emitted in JSON and CSV."""

    N: int
    l: int
    ordering: tuple[int, ...]
    summands: tuple[dict, ...] = field(default=())
    oracle_checked: bool = False

    def to_json(self) -> str:
        data = asdict(self)
        data["ordering"] = list(self.ordering)
        data["summands"] = [dict(s) for s in self.summands]
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        data = json.loads(text)
        return cls(
            N=data["N"],
            l=data["l"],
            ordering=tuple(data["ordering"]),
            summands=tuple(data["summands"]),
            oracle_checked=data["oracle_checked"],
        )

    def csv_rows(self) -> list[list]:
        checked = int(self.oracle_checked)
        if not self.summands:
            return [[self.N, self.l, "", "", "", "", checked]]
        return [
            [self.N, self.l, s["d"], s["epsilon"], s["valuation"], s["order"], checked]
            for s in self.summands
        ]

    def text(self) -> str:
        lines = [f"N={self.N} l={self.l} ordering={','.join(map(str, self.ordering))}"]
        for s in self.summands:
            lines.append(f"  d={s['d']} epsilon={s['epsilon']} valuation={s['valuation']} Z/{s['order']}")
        group = " + ".join(f"Z/{s['order']}" for s in self.summands if s["valuation"] > 0) or "0"
        lines.append(f"  group: {group}")
        if self.oracle_checked:
            lines.append("  oracle: EQUAL")
        return "\n".join(lines)


def structure_record(N: int, l: int, check: bool = False) -> OutputRecord:
    """Build the record for ``(N, l)``; raises ``HypothesisError`` when inadmissible."""
    T = torsion_structure(N, l)
    summands = tuple(
        {"d": s.d, "epsilon": s.epsilon, "valuation": s.valuation, "order": s.cyclic_order}
        for s in sorted(T.summands, key=lambda s: s.d)
    )
    checked = False
    if check:
        report = verify(N, l)
        if not report.equal:
            raise click.ClickException(str(report))
        checked = True
    return OutputRecord(N, l, T.ordering, summands, checked)


def parse_range(text: str) -> range:
    """``a..b`` inclusive, or a single integer."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise click.BadParameter(f"expected a..b, got {text!r}")
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) else a
    if b < a:
        raise click.BadParameter(f"empty range {text!r}")
    return range(a, b + 1)


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise click.BadParameter(f"{text!r} is not an integer") from None


def parse_coefficients(N: int, tokens: tuple[str, ...]) -> DivisorVector:
    """Turn the coefficient tokens into a divisor vector over the divisors of ``N``."""
    ds = divisors(N)
    if tokens == ("0",) or not tokens:
        return DivisorVector.zero(N)
    if len(tokens) == 1 and re.fullmatch(r"-?\d+(:-?\d+){%d}" % (len(ds) - 1), tokens[0]):
        values = [_int(x) for x in tokens[0].split(":")]
        return DivisorVector(N, tuple(values))
    total = DivisorVector.zero(N)
    for tok in tokens:
        m = re.fullmatch(r"(?:(-?\d+)\*)?([zc]):(\d+)", tok)
        if m:
            k = int(m.group(1)) if m.group(1) else 1
            d = int(m.group(3))
            if N % d:
                raise click.BadParameter(f"{d} does not divide {N}")
            if m.group(2) == "z":
                try:
                    vec = z_vector(prime_ordering(N), d).vector
                except (HypothesisError, ValueError) as e:
                    raise click.BadParameter(str(e)) from None
            else:
                try:
                    vec = C_vector(N, d)
                except ValueError as e:
                    raise click.BadParameter(str(e)) from None
            total = total + vec.scale(k)
            continue
        m = re.fullmatch(r"(\d+):(-?\d+)", tok)
        if not m:
            raise click.BadParameter(f"cannot read coefficient {tok!r}")
        d, a = int(m.group(1)), int(m.group(2))
        if N % d:
            raise click.BadParameter(f"{d} does not divide {N}")
        total = total + DivisorVector.from_map(N, {d: a})
    return total


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _admissible_ls(N: int) -> list[int]:
    out = []
    for l in range(3, L_BOUND + 1):
        if not is_prime(l):
            continue
        try:
            check_torsion_hypotheses(N, l)
        except HypothesisError:
            continue
        out.append(l)
    return out


FORMAT = click.option(
    "--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text", show_default=True
)
OUT = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write to a file.")


@click.group()
@click.version_option(package_name="artifact")
def cli() -> None:
    """Cuspidal class groups of X_0(N) and l-primary torsion of J_0(N)_m."""


@cli.command()
@click.argument("N", type=int)
@click.option("--l", "l", type=int, required=True, help="Odd prime with l^2 not dividing 3N.")
@click.option("--verify", "check", is_flag=True, help="Compare with the lattice oracle.")
@FORMAT
@OUT
def structure(n: int, l: int, check: bool, fmt: str, out: Optional[str]) -> None:
    """Torsion structure of ker(delta-bar) on C(N) at l."""
    try:
        rec = structure_record(n, l, check)
    except HypothesisError as e:
        raise click.ClickException(str(e)) from None
    if not torsion_structure(n, l).ordering_valid:
        click.echo(f"warning: no prime ordering of {n} fits l={l}; ascending order used", err=True)
    if fmt == "json":
        _emit(rec.to_json() + "\n", out)
    elif fmt == "csv":
        _emit(_csv(rec.csv_rows(), CSV_COLUMNS), out)
    else:
        _emit(rec.text() + "\n", out)


@cli.command(help="Order of a degree-zero cuspidal divisor.\n\n" + COEFF_HELP)
@click.argument("N", type=int)
@click.argument("coeffs", nargs=-1)
@FORMAT
@OUT
def order(n: int, coeffs: tuple[str, ...], fmt: str, out: Optional[str]) -> None:
    D = parse_coefficients(n, coeffs)
    if not degree_check(D):
        raise click.ClickException(f"divisor has degree {D.degree()}, not zero")
    if not D.is_integral():
        raise click.ClickException("coefficients must be integers")
    od = order_of_divisor(D)
    data = {
        "N": n,
        "divisor": {str(d): int(a) for d, a in zip(D.divisors, D.entries)},
        "V": list(od.V),
        "GCD": od.GCD,
        "Vnorm": list(od.Vnorm),
        "Pw": {str(p): w for p, w in od.Pw.items()},
        "h": od.h,
        "order": od.order,
    }
    if fmt == "json":
        _emit(json.dumps(data, sort_keys=True) + "\n", out)
    elif fmt == "csv":
        rows = [[n, d, a, v, w] for d, a, v, w in zip(D.divisors, D.entries, od.V, od.Vnorm)]
        _emit(_csv(rows, ["N", "d", "coefficient", "V", "Vnorm"]), out)
    else:
        lines = [f"N={n}", "  d  coefficient  V  Vnorm"]
        lines += [f"  {d}  {a}  {v}  {w}" for d, a, v, w in zip(D.divisors, D.entries, od.V, od.Vnorm)]
        lines.append(f"  GCD={od.GCD}")
        lines.append("  Pw: " + " ".join(f"{p}:{w}" for p, w in od.Pw.items()))
        lines.append(f"  h={od.h}")
        lines.append(f"  order={od.order}")
        _emit("\n".join(lines) + "\n", out)


@cli.command("eta-div", help="Divisor of an eta quotient prod eta(d z)^(r_d).\n\n"
             "Exponents use the same d:r pairs or full-vector syntax as `order`.")
@click.argument("N", type=int)
@click.argument("exponents", nargs=-1)
@FORMAT
@OUT
def eta_div(n: int, exponents: tuple[str, ...], fmt: str, out: Optional[str]) -> None:
    if any(re.match(r"(-?\d+\*)?[zc]:", t) for t in exponents):
        raise click.BadParameter("z: and c: shortcuts name divisors, not eta exponents")
    r = parse_coefficients(n, exponents)
    D = div_of_eta(EtaExponentVector(n, r.entries))
    modular = is_modular(EtaExponentVector(n, r.entries))
    fmt_q = lambda x: str(Fraction(x))  # noqa: E731
    if fmt == "json":
        data = {
            "N": n,
            "exponents": {str(d): int(x) for d, x in zip(r.divisors, r.entries)},
            "divisor": {str(d): fmt_q(x) for d, x in zip(D.divisors, D.entries)},
            "modular": modular,
        }
        _emit(json.dumps(data, sort_keys=True) + "\n", out)
    elif fmt == "csv":
        rows = [[n, d, x, fmt_q(y)] for d, x, y in zip(r.divisors, r.entries, D.entries)]
        _emit(_csv(rows, ["N", "d", "exponent", "coefficient"]), out)
    else:
        lines = [f"N={n} modular={'yes' if modular else 'no'}", "  d  exponent  coefficient of P_d"]
        lines += [f"  {d}  {x}  {fmt_q(y)}" for d, x, y in zip(r.divisors, r.entries, D.entries)]
        _emit("\n".join(lines) + "\n", out)


@cli.command()
@click.argument("N", type=int)
@FORMAT
@OUT
def cusps(n: int, fmt: str, out: Optional[str]) -> None:
    """Cusps of X_0(N) grouped by level."""
    try:
        table = cusp_table(n)
    except ValueError as e:
        raise click.ClickException(str(e)) from None
    if fmt == "json":
        data = {"N": n, "levels": [asdict(c) for c in table], "total": cusp_count(n)}
        _emit(json.dumps(data, sort_keys=True) + "\n", out)
    elif fmt == "csv":
        _emit(_csv([[n, c.d, c.M_d, c.count] for c in table], ["N", "d", "M_d", "count"]), out)
    else:
        lines = [f"N={n} cusps={cusp_count(n)}", "  d  gcd(d,N/d)  count"]
        lines += [f"  {c.d}  {c.M_d}  {c.count}" for c in table]
        _emit("\n".join(lines) + "\n", out)


@cli.command("verify")
@click.argument("N", type=int, required=False)
@click.option("--l", "l", type=int, default=None, help="Single prime; default is every admissible l <= 50.")
@click.option("--range", "rng", default=None, help="Range a..b of N instead of a single N.")
@FORMAT
@OUT
def verify_cmd(n: Optional[int], l: Optional[int], rng: Optional[str], fmt: str, out: Optional[str]) -> None:
    """Compare the closed-form structure with the lattice oracle."""
    if (n is None) == (rng is None):
        raise click.UsageError("give exactly one of N or --range")
    Ns = [n] if n is not None else list(parse_range(rng))
    reports = []
    for N in Ns:
        if n is None and (N % 2 == 0 or N < 3):
            continue
        ls = [l] if l is not None else _admissible_ls(N)
        for q in ls:
            try:
                check_torsion_hypotheses(N, q)
            except HypothesisError as e:
                if n is not None:
                    raise click.ClickException(str(e)) from None
                continue
            reports.append(verify(N, q))
    if fmt == "json":
        data = [
            {"N": r.N, "l": r.l, "equal": r.equal, "formula": list(r.formula), "oracle": list(r.oracle)}
            for r in reports
        ]
        _emit(json.dumps(data, sort_keys=True) + "\n", out)
    elif fmt == "csv":
        rows = [[r.N, r.l, int(r.equal), ";".join(map(str, r.formula)), ";".join(map(str, r.oracle))]
                for r in reports]
        _emit(_csv(rows, ["N", "l", "equal", "formula", "oracle"]), out)
    else:
        _emit("".join(str(r) + "\n" for r in reports), out)
    if not all(r.equal for r in reports):
        sys.exit(1)


@cli.command()
@click.argument("rng", metavar="RANGE", required=False)
@click.option("--range", "rng_opt", default=None, help="Range a..b of N.")
@click.option("--l", "l", type=int, required=True)
@click.option("--verify", "check", is_flag=True, help="Check every row against the oracle.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@OUT
def table(rng: Optional[str], rng_opt: Optional[str], l: int, check: bool, fmt: str, out: Optional[str]) -> None:
    """One row per odd N in RANGE; inadmissible N get a reason, even N are skipped."""
    text = rng or rng_opt
    if not text:
        raise click.UsageError("give a range a..b")
    rows, records = [], []
    for N in parse_range(text):
        try:
            rec = structure_record(N, l, check)
        except HypothesisError as e:
            if N % 2 == 0:
                continue
            rows.append([N, l, "", "", "", "", 0, str(e)])
            records.append({"N": N, "l": l, "skipped": str(e)})
            continue
        rows += [r + [""] for r in rec.csv_rows()]
        records.append(json.loads(rec.to_json()))
    if fmt == "json":
        _emit(json.dumps(records, sort_keys=True) + "\n", out)
    else:
        _emit(_csv(rows, CSV_COLUMNS + ["reason"]), out)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
