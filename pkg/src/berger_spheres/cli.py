"""Command-line surface: spectrum slices, bifurcation diagrams, degeneracy
tables, Morse profiles, first-eigenvalue curves, and the verification suite.

Every number printed is reproduced by a library call with the same arguments;
the CLI does no math of its own. Output is deterministic: fixed column order,
fixed decimal places derived from the precision, CSV with CRLF line endings,
versioned JSON.

The environment variable BERGER_PRECISION (a decimal such as 1e-9) overrides
the default precision.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Any, Sequence

from . import verify as verify_suite
from .bifurcation import (
    DEFAULT_CLASSIFY_PRECISION,
    classify,
    degeneracy_values,
    morse_index,
    morse_profile,
)
from .errors import BergerError
from .families import lambda1, lambda1_multiplicity, threshold
from .numerics import Enclosure, Surd
from .spectra import (
    FamilyDescriptor,
    admissible_pairs,
    branch_value,
    descriptor,
    enumerate_spectrum_below,
)

JSON_SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Deterministic rendering
# ---------------------------------------------------------------------------


def decimal_digits(precision: Fraction) -> int:
    """Decimal places such that rounding introduces error below the precision."""
    digits = 0
    p = Fraction(1)
    while p > precision and digits < 60:
        p /= 10
        digits += 1
    return digits + 1


def format_fraction(x: Fraction, digits: int) -> str:
    """Fixed-point decimal with `digits` places, round-half-away-from-zero."""
    sign = "-" if x < 0 else ""
    scale = 10**digits
    ax = abs(x) * scale
    n = (2 * ax.numerator + ax.denominator) // (2 * ax.denominator)
    whole, frac = divmod(n, scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def format_real(value: Fraction | Surd | Enclosure, digits: int) -> str:
    """Deterministic decimal rendering of an exact or enclosed real."""
    if isinstance(value, Fraction):
        return format_fraction(value, digits)
    if isinstance(value, Surd):
        value = value.enclosure(Fraction(1, 10 ** (digits + 3)))
    return format_fraction(value.midpoint, digits)


def surd_json(s: Surd, digits: int) -> dict[str, Any]:
    return {
        "alpha": str(s.alpha),
        "beta": str(s.beta),
        "delta": s.delta,
        "symbolic": str(s),
        "decimal": format_real(s, digits),
    }


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass
class RunConfig:
    desc: FamilyDescriptor
    t_values: list[Fraction] | None
    cutoff: Fraction | None
    q_max: int | None
    k_limit: int
    precision: Fraction
    fmt: str
    output: str | None

    @property
    def digits(self) -> int:
        return decimal_digits(self.precision)


def _parse_decimal(text: str, what: str) -> Fraction:
    try:
        return Fraction(Decimal(text))
    except (InvalidOperation, ValueError, OverflowError):  # Overflow: "inf"
        raise BergerError(f"invalid {what}: {text!r}") from None


def _parse_t_range(text: str) -> list[Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise BergerError(f"t-range must be start:stop:step, got {text!r}")
    start, stop, step = (_parse_decimal(p, "t-range component") for p in parts)
    if step <= 0 or start <= 0 or stop < start:
        raise BergerError(f"t-range needs 0 < start <= stop and step > 0, got {text!r}")
    values = []
    cur = start
    while cur <= stop:
        values.append(cur)
        cur += step
    return values


def _default_precision() -> Fraction:
    raw = os.environ.get("BERGER_PRECISION")
    if raw:
        value = _parse_decimal(raw, "BERGER_PRECISION")
        if value <= 0:
            raise BergerError(f"BERGER_PRECISION must be positive, got {raw!r}")
        return value
    return DEFAULT_CLASSIFY_PRECISION


def _build_config(args: argparse.Namespace) -> RunConfig:
    desc = descriptor(args.family, getattr(args, "n", None))
    precision = _parse_decimal(args.precision, "precision") if args.precision \
        else _default_precision()
    if precision <= 0:
        raise BergerError("precision must be positive")
    t_values: list[Fraction] | None = None
    t_single = getattr(args, "t", None)
    t_range = getattr(args, "t_range", None)
    if t_single is not None and t_range is not None:
        raise BergerError("specify exactly one of --t and --t-range")
    if t_single is not None:
        t_values = [_parse_decimal(t_single, "--t")]
    elif t_range is not None:
        t_values = _parse_t_range(t_range)
    cutoff = _parse_decimal(args.cutoff, "--cutoff") if getattr(args, "cutoff", None) else None
    return RunConfig(
        desc=desc,
        t_values=t_values,
        cutoff=cutoff,
        q_max=getattr(args, "qmax", None),
        k_limit=getattr(args, "k_limit", 6),
        precision=precision,
        fmt=args.format,
        output=args.output,
    )


# ---------------------------------------------------------------------------
# Table assembly (header + rows of strings, plus optional comment block)
# ---------------------------------------------------------------------------


@dataclass
class Table:
    command: str
    header: list[str]
    rows: list[list[str]]
    block: list[list[str]] | None = None  # rows of a '#'-prefixed trailer block
    extra_json: dict[str, Any] | None = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(self.header)
        writer.writerows(self.rows)
        if self.block:
            for row in self.block:
                writer.writerow(row)
        return buf.getvalue()

    def to_json(self) -> str:
        payload: dict[str, Any] = {
            "schema_version": JSON_SCHEMA_VERSION,
            "command": self.command,
            "columns": self.header,
            "rows": self.rows,
        }
        if self.extra_json:
            payload.update(self.extra_json)
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _mult_str(m: int | None) -> str:
    return "?" if m is None else str(m)


def spectrum_table(cfg: RunConfig) -> Table:
    assert cfg.t_values and len(cfg.t_values) == 1 and cfg.cutoff is not None
    t = cfg.t_values[0]
    digits = cfg.digits
    sl = enumerate_spectrum_below(cfg.desc, t, cutoff=cfg.cutoff)
    rows = [
        [format_fraction(t, digits), str(b.k), str(b.j), format_fraction(v, digits),
         b.status.value, _mult_str(b.multiplicity)]
        for v, b in sl.entries
    ]
    return Table("spectrum", ["t", "k", "j", "value", "status", "multiplicity"], rows,
                 extra_json={"cutoff": format_fraction(cfg.cutoff, digits),
                             "k_max_used": sl.k_max_used})


def diagram_table(cfg: RunConfig) -> Table:
    if cfg.t_values is None or len(cfg.t_values) < 2:
        raise BergerError("diagram needs a --t-range with at least two grid points")
    digits = cfg.digits
    branches: list[tuple[int, int]] = []
    for k in range(cfg.k_limit + 1):
        for j, _status in admissible_pairs(cfg.desc, k):
            branches.append((k, j))
    branches.sort()
    header = ["t", "threshold"] + [f"l_{k}_{j}" for k, j in branches]
    rows = []
    for t in cfg.t_values:
        s = t * t
        row = [format_fraction(t, digits), format_fraction(threshold(cfg.desc, s=s), digits)]
        row += [format_fraction(branch_value(cfg.desc, k, j, s=s), digits) for k, j in branches]
        rows.append(row)
    t_lo, t_hi = cfg.t_values[0], cfg.t_values[-1]
    block = [["#degeneracy", "q", "t"]]
    degeneracies_json = []
    values = degeneracy_values(cfg.desc, cfg.k_limit // 2, cfg.precision)
    for dv in values:
        mid = dv.t_interval.midpoint
        if t_lo <= mid <= t_hi:
            block.append(["#degeneracy", str(dv.q), format_real(dv.t_interval, digits)])
            degeneracies_json.append({"q": dv.q, "t": format_real(dv.t_interval, digits),
                                      "s": surd_json(dv.s, digits)})
    return Table("diagram", header, rows, block=block,
                 extra_json={"degeneracies": degeneracies_json})


def degeneracies_table(cfg: RunConfig) -> Table:
    q_max = cfg.q_max if cfg.q_max is not None else 5
    digits = cfg.digits
    values = degeneracy_values(cfg.desc, q_max, cfg.precision)
    rows = []
    js = []
    for dv in values:
        rows.append([str(dv.q), format_real(dv.t_interval, digits), _mult_str(dv.index_jump)])
        js.append({"q": dv.q, "t": format_real(dv.t_interval, digits),
                   "s": surd_json(dv.s, digits), "branch": list(dv.branch),
                   "index_jump": dv.index_jump})
    extra: dict[str, Any] = {"degeneracies": js}
    if len(values) - 1 < q_max:
        extra["note"] = "family u has no degeneracy values besides t = 1"
    return Table("degeneracies", ["q", "t", "index_jump"], rows, extra_json=extra)


def morse_table(cfg: RunConfig) -> Table:
    digits = cfg.digits
    if cfg.t_values is not None:
        rows = [[format_fraction(t, digits), str(morse_index(cfg.desc, t))]
                for t in cfg.t_values]
        return Table("morse", ["t", "index"], rows)
    q_max = cfg.q_max if cfg.q_max is not None else 5
    profile = morse_profile(cfg.desc, q_max, cfg.precision)
    rows = []
    for piece in profile.pieces:
        lower = "0" if piece.t_lower is None else format_real(piece.t_lower, digits)
        upper = "inf" if piece.t_upper is None else format_real(piece.t_upper, digits)
        rows.append([str(piece.q), lower, upper, str(piece.index)])
    return Table("morse", ["q", "t_lower", "t_upper", "index"], rows)


def lambda1_table(cfg: RunConfig) -> Table:
    assert cfg.t_values is not None, "lambda1 takes --t or --t-range"
    digits = cfg.digits
    rows = []
    for t in cfg.t_values:
        value = lambda1(cfg.desc, t)
        mult = lambda1_multiplicity(cfg.desc, t)
        rows.append([format_fraction(t, digits), format_fraction(value, digits),
                     _mult_str(mult)])
    return Table("lambda1", ["t", "lambda1", "multiplicity"], rows)


def classify_table(cfg: RunConfig) -> Table:
    assert cfg.t_values is not None, "classify takes --t or --t-range"
    digits = cfg.digits
    rows = []
    for t in cfg.t_values:
        c = classify(cfg.desc, t, precision=cfg.precision)
        rows.append([format_fraction(t, digits), c.kind.value,
                     "" if c.q is None else str(c.q),
                     "" if c.index_jump is None else str(c.index_jump)])
    return Table("classify", ["t", "kind", "q", "index_jump"], rows)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, *, with_n: bool = True) -> None:
    sub.add_argument("--family", required=True, choices=["u", "sp", "spin9"],
                     help="which homogeneous family")
    sub.add_argument("--n", type=int, default=None,
                     help="family parameter n >= 1 (u and sp only; spin9 takes no n)")
    sub.add_argument("--precision", default=None,
                     help="decimal precision, e.g. 1e-9 (default from BERGER_PRECISION)")
    sub.add_argument("--format", choices=["csv", "json"], default="csv",
                     help="output format (default csv)")
    sub.add_argument("--output", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="berger",
        description="Spectral and bifurcation data of homogeneous metrics on spheres.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("spectrum", help="eigenvalue branches below a cutoff at one t")
    _add_common(p)
    p.add_argument("--t", required=True, help="scaling parameter t > 0 (decimal)")
    p.add_argument("--cutoff", required=True, help="enumerate values <= this cutoff")

    p = subs.add_parser("diagram", help="threshold and branch curves over a t-range")
    _add_common(p)
    p.add_argument("--t-range", dest="t_range", required=True,
                   help="grid start:stop:step (decimals)")
    p.add_argument("--k-limit", dest="k_limit", type=int, default=6,
                   help="draw branches with k <= this (default 6)")

    p = subs.add_parser("degeneracies", help="degeneracy values t_q with index jumps")
    _add_common(p)
    p.add_argument("--qmax", type=int, default=5, help="largest q (default 5)")

    p = subs.add_parser("morse", help="Morse index at t, or the profile up to qmax")
    _add_common(p)
    p.add_argument("--t", default=None, help="single parameter value")
    p.add_argument("--t-range", dest="t_range", default=None, help="grid start:stop:step")
    p.add_argument("--qmax", type=int, default=None, help="tabulate profile pieces instead")

    p = subs.add_parser("lambda1", help="first positive eigenvalue and multiplicity")
    _add_common(p)
    p.add_argument("--t", default=None, help="single parameter value")
    p.add_argument("--t-range", dest="t_range", default=None, help="grid start:stop:step")

    p = subs.add_parser("classify", help="locally-rigid / bifurcation classification")
    _add_common(p)
    p.add_argument("--t", default=None, help="single parameter value")
    p.add_argument("--t-range", dest="t_range", default=None, help="grid start:stop:step")

    p = subs.add_parser("verify", help="run every oracle-vs-closed-form check")
    p.add_argument("--output", default=None, help="write the JSON report here")
    p.add_argument("--quiet", action="store_true", help="suppress per-check progress lines")

    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            echo = None if args.quiet else (lambda line: print(line, file=sys.stderr))
            report = verify_suite.run_suite(echo=echo)
            _emit(json.dumps(report, indent=2, ensure_ascii=False) + "\n", args.output)
            return 0 if report["passed"] else 1

        cfg = _build_config(args)
        builders = {
            "spectrum": spectrum_table,
            "diagram": diagram_table,
            "degeneracies": degeneracies_table,
            "morse": morse_table,
            "lambda1": lambda1_table,
            "classify": classify_table,
        }
        if args.command == "morse" and cfg.t_values is None and cfg.q_max is None:
            raise BergerError("morse needs --t, --t-range, or --qmax")
        if args.command in ("lambda1", "classify") and cfg.t_values is None:
            raise BergerError(f"{args.command} needs --t or --t-range")
        table = builders[args.command](cfg)
        _emit(table.to_csv() if cfg.fmt == "csv" else table.to_json(), cfg.output)
        return 0
    except BergerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
