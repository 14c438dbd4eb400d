"""``qhk`` command line.

Exit codes: 0 success (or all checks PASS), 1 mathematical failure or an
axiom violation, 2 bad input, 3 a size gate was hit.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .alexander import AlexanderSpec, SpecError, phi_family, takasaki
from .config import Limits, ResourceLimitError
from .corpus import FAMILIES, family
from .homology import h2_quandle, h2_quandle_cohomology_dim, h2_rack
from .io import ParseError, parse_table, quandle_to_json, read_quandle, read_spec, spec_to_json
from .linalg import require_prime
from .quandle import (
    QuandleAxiomError,
    alexander,
    base_point,
    conjugation_class,
    dihedral,
    inn_group,
    is_connected,
    is_quasigroup,
    orbits,
    stabilizer,
    symmetric_generators,
    transposition,
    trivial_quandle,
    type_of,
    validate,
)
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GATE = 0, 1, 2, 3
THEOREMS = ("thm4", "thm5", "thm6", "cor8", "prop9", "prop5", "brackets")


class InputError(ValueError):
    """Bad command-line parameters."""


@dataclass(frozen=True)
class JobConfig:
    command: str
    inputs: tuple[str, ...] = ()
    params: dict[str, Any] = field(default_factory=dict)
    ell: int | None = None
    limits: Limits = field(default_factory=Limits.from_env)
    fmt: str = "table"
    output: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.ell is not None:
            try:
                require_prime(self.ell)
            except ValueError as exc:
                raise InputError(str(exc)) from exc
        if self.fmt not in ("table", "json", "csv"):
            raise InputError(f"unknown format {self.fmt!r}")


# ---------------------------------------------------------------------------
# rendering


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def render_record(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    width = max((len(k) for k in data), default=0)
    return "".join(f"{k.ljust(width)}  {_cell(v)}\n" for k, v in data.items())


def render_rows(rows: list[dict], columns: Sequence[str], fmt: str, meta: dict | None = None) -> str:
    if fmt == "json":
        return json.dumps({"schema": 1, **(meta or {}), "rows": rows}, indent=2) + "\n"
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def structure_report(q, limits: Limits) -> dict:
    G = inn_group(q, limits)
    x0 = base_point(q)
    return {
        "schema": 1,
        "axioms": "ok",
        "order": q.order,
        "orbits": len(orbits(q)),
        "connected": is_connected(q),
        "quasigroup": is_quasigroup(q),
        "type": type_of(q),
        "inn_order": G.order,
        "base_point": x0,
        "stab_order": stabilizer(G, x0).order,
    }


def cmd_check(job: JobConfig) -> int:
    table = parse_table(_read_text(job.inputs[0]))
    try:
        q = validate(table)
    except QuandleAxiomError as exc:
        data = {"schema": 1, "axioms": "fail", "axiom": exc.axiom, "witness": list(exc.witness),
                "message": str(exc)}
        _emit(render_record(data, job.fmt), job.output)
        return EXIT_FAIL
    _emit(render_record(structure_report(q, job.limits), job.fmt), job.output)
    return EXIT_OK


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_h2(job: JobConfig) -> int:
    q = read_quandle(job.inputs[0])
    kind = job.params.get("kind", "quandle")
    group = h2_rack(q, job.limits) if kind == "rack" else h2_quandle(q, job.limits)
    data: dict[str, Any] = {"schema": 1, "order": q.order, "kind": kind, "h2": str(group),
                            "free_rank": group.free_rank, "torsion": list(group.invariant_factors)}
    if job.ell is not None:
        data["ell"] = job.ell
        data["h2q_cohomology_dim"] = h2_quandle_cohomology_dim(q, job.ell, job.limits)
    _emit(render_record(data, job.fmt), job.output)
    return EXIT_OK


def _spec_output_path(out: str) -> Path:
    p = Path(out)
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    return p.with_name(stem + ".spec.json")


def build_family(params: dict):
    """Quandle (and spec, when the family has one) from CLI parameters."""
    name = params["family"]
    n, p = params.get("n"), params.get("p")
    spec = None
    if name == "dihedral":
        _need(n, "-n", name, lo=1)
        q = dihedral(n)
    elif name == "trivial":
        _need(n, "-n", name, lo=1)
        q = trivial_quandle(n)
    elif name == "takasaki":
        factors = params.get("factors") or ([n] if n else None)
        if not factors:
            raise InputError("takasaki needs --factors or -n")
        spec = takasaki(factors)
        q = alexander(spec)
    elif name == "phi":
        _need(p, "-p", name)
        _need(n, "-n", name, lo=2)
        try:
            spec = phi_family(p, n)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        q = alexander(spec)
    elif name == "alexander":
        if not params.get("spec"):
            raise InputError("alexander family needs --spec FILE")
        spec = read_spec(params["spec"])
        q = alexander(spec)
    elif name == "conj-transpositions":
        _need(n, "-n", name, lo=2)
        q = conjugation_class(symmetric_generators(n), transposition(n))
    else:
        raise InputError(f"unknown family {name!r}")
    return q, spec


def _need(value, flag: str, fam: str, lo: int | None = None) -> None:
    if value is None:
        raise InputError(f"family {fam} needs {flag}")
    if lo is not None and value < lo:
        raise InputError(f"family {fam}: {flag} must be >= {lo}, got {value}")


def cmd_family(job: JobConfig) -> int:
    q, spec = build_family(job.params)
    if job.output:
        Path(job.output).write_text(quandle_to_json(q), encoding="utf-8")
        if spec is not None:
            _spec_output_path(job.output).write_text(spec_to_json(spec), encoding="utf-8")
    else:
        sys.stdout.write(quandle_to_json(q))
    if spec is not None and job.params.get("spec_out"):
        Path(job.params["spec_out"]).write_text(spec_to_json(spec), encoding="utf-8")
    return EXIT_OK


def _job_spec(job: JobConfig) -> AlexanderSpec:
    if job.params.get("spec"):
        return read_spec(job.params["spec"])
    p, n = job.params.get("p"), job.params.get("n")
    if p is not None and n is not None:
        try:
            return phi_family(p, n)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    raise InputError("give --spec FILE or -p/-n for the phi family")


def run_verify(job: JobConfig) -> V.Report:
    thm = job.params["theorem"]
    ell = job.ell if job.ell is not None else 2
    if thm == "prop9":
        if job.params.get("spec"):
            return V.verify_prop9_spec(read_spec(job.params["spec"]), job.limits)
        p = job.params.get("p")
        if p is None:
            raise InputError("prop9 needs -p or --spec")
        try:
            require_prime(p)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        return V.verify_prop9(p, job.limits)
    if thm == "prop5":
        p, n = job.params.get("p"), job.params.get("n")
        if p is None or n is None:
            raise InputError("prop5 needs -p and -n")
        try:
            return V.verify_phi(p, n, job.limits)
        except SpecError as exc:
            raise InputError(str(exc)) from exc
    if thm == "thm5" and job.params.get("quandle"):
        return V.verify_thm5_quandle(read_quandle(job.params["quandle"]), ell, job.limits)
    spec = _job_spec(job)
    if thm == "thm4":
        return V.verify_thm4(spec, job.limits)
    if thm == "thm5":
        return V.verify_thm5(spec, ell, job.limits)
    if thm == "thm6":
        return V.verify_thm6(spec, ell, job.limits)
    if thm == "cor8":
        return V.verify_cor8(spec)
    if thm == "brackets":
        return V.verify_brackets(spec, job.seed)
    raise InputError(f"unknown theorem {thm!r}")


def cmd_verify(job: JobConfig) -> int:
    report = run_verify(job)
    data = report.to_json()
    if job.fmt == "json":
        text = json.dumps(data, indent=2) + "\n"
    else:
        lines = [f"{report.theorem}: {report.status}"]
        width = max((len(c.name) for c in report.checks), default=0)
        for c in report.checks:
            lines.append(f"  {c.status:<12} {c.name.ljust(width)}  {c.detail}".rstrip())
        for k, v in data["data"].items():
            if k != "rows":
                lines.append(f"  {k}: {_cell(v)}")
        text = "\n".join(lines) + "\n"
    _emit(text, job.output)
    if report.status == V.PASS:
        return EXIT_OK
    return EXIT_FAIL


CENSUS_COLUMNS = ("family", "params", "order", "orbits", "connected", "type", "inn_order",
                  "h2_rack", "h2_quandle", "thm4", "error")


def census_row(entry, limits: Limits) -> dict:
    q = entry.quandle
    row: dict[str, Any] = {"family": entry.family, "params": entry.params, "order": q.order}
    try:
        row["orbits"] = len(orbits(q))
        row["connected"] = is_connected(q)
        row["type"] = type_of(q)
        row["inn_order"] = inn_group(q, limits).order
        row["h2_rack"] = str(h2_rack(q, limits))
        row["h2_quandle"] = str(h2_quandle(q, limits))
        row["thm4"] = None
        if entry.spec is not None and entry.spec.one_minus_t_invertible:
            row["thm4"] = V.verify_thm4(entry.spec, limits).status
        row["error"] = None
    except (ResourceLimitError, ValueError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return {c: row.get(c) for c in CENSUS_COLUMNS}


def cmd_census(job: JobConfig) -> int:
    max_order = job.params["max_order"]
    job.limits.check("max_homology_order", max_order)
    names = job.params.get("families") or list(FAMILIES)
    for name in names:
        if name not in FAMILIES:
            raise InputError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    rows = []
    for name in names:
        for entry in family(name, max_order):
            rows.append(census_row(entry, job.limits))
    meta = {"max_order": max_order, "families": names}
    _emit(render_rows(rows, CENSUS_COLUMNS, job.fmt, meta), job.output)
    return EXIT_FAIL if any(r["thm4"] == V.FAIL for r in rows) else EXIT_OK


COMMANDS = {"check": cmd_check, "h2": cmd_h2, "family": cmd_family, "verify": cmd_verify,
            "census": cmd_census}


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _factors(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad factor list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qhk", description="Second homology of finite quandles.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p, choices=("table", "json")):
        p.add_argument("--format", choices=choices, default="table")
        p.add_argument("-o", "--output")

    p = sub.add_parser("check", help="validate a quandle file and print its structure")
    p.add_argument("file")
    fmt(p)

    p = sub.add_parser("h2", help="second rack or quandle homology")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--rack", dest="kind", action="store_const", const="rack")
    g.add_argument("--quandle", dest="kind", action="store_const", const="quandle")
    p.add_argument("--ell", type=int, help="also report dim H^2_Q(X; F_ell)")
    fmt(p)

    p = sub.add_parser("family", help="write a quandle (and spec) from a family")
    p.add_argument("--family", required=True,
                   choices=("dihedral", "trivial", "takasaki", "phi", "alexander", "conj-transpositions"))
    p.add_argument("-n", type=int)
    p.add_argument("-p", type=int)
    p.add_argument("--factors", type=_factors)
    p.add_argument("--spec")
    p.add_argument("--spec-out")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="cross-check a closed form against the chain computation")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--spec")
    p.add_argument("--quandle")
    p.add_argument("-p", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--seed", type=int, default=0)
    fmt(p)

    p = sub.add_parser("census", help="tabulate invariants over families")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--families", type=lambda s: [x for x in s.split(",") if x])
    fmt(p, ("table", "json", "csv"))
    return ap


def job_from_args(ns: argparse.Namespace) -> JobConfig:
    cmd = ns.command
    get = lambda k: getattr(ns, k, None)  # noqa: E731
    inputs = (ns.file,) if get("file") else ()
    params: dict[str, Any] = {}
    if cmd == "h2":
        params["kind"] = ns.kind or "quandle"
    elif cmd == "family":
        params.update(family=ns.family, n=ns.n, p=ns.p, factors=ns.factors, spec=ns.spec,
                      spec_out=ns.spec_out)
    elif cmd == "verify":
        params.update(theorem=ns.theorem, spec=ns.spec, quandle=ns.quandle, p=ns.p, n=ns.n)
    elif cmd == "census":
        if ns.max_order < 1:
            raise InputError("--max-order must be positive")
        params.update(max_order=ns.max_order, families=ns.families)
    return JobConfig(cmd, inputs, params, get("ell"), Limits.from_env(),
                     get("format") or "table", get("output"), get("seed") or 0)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        job = job_from_args(ns)
        return COMMANDS[job.command](job)
    except ResourceLimitError as exc:
        print(f"qhk: size gate exceeded: {exc} (raise it with QHK_MAX_ORDER "
              f"for the homology gate)", file=sys.stderr)
        return EXIT_GATE
    except (InputError, ParseError, SpecError, QuandleAxiomError) as exc:
        print(f"qhk: {exc}", file=sys.stderr)
        return EXIT_FAIL if isinstance(exc, QuandleAxiomError) else EXIT_INPUT
    except ValueError as exc:
        print(f"qhk: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
