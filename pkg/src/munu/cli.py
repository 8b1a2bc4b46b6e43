"""Command-line front end.

Every subcommand builds one request model, dispatches it through
munu.service.client (in process unless --server is given) and renders
the returned Report. Exit codes: 0 for answered queries and passing
checks, 1 when a property check fails (its counterexample is
printed), 2 for usage, parse and guard errors.

With --json the output is the canonical serialization of the report
envelope: sorted keys, two-space indent, one trailing newline. The
same invocation on the same inputs always produces the same bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import MunuError
from .reports import REPORT_SCHEMA
from .service import models
from .service.client import call

# Commands whose report can legitimately say holds=False: a failure
# here is a broken property (exit 1), not a negative query answer.
PROPERTY_COMMANDS = {
    ("lat", "induction"), ("lat", "coinduction"), ("lat", "dual"),
    ("st", "endo"),
    ("nom", "family"), ("nom", "covariance"), ("nom", "negcheck"),
    ("check", "all"),
}


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise MunuError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _fmt_check_line(r: models.Report) -> str:
    if r.holds is None:
        return f"--   {r.command}"
    if r.holds:
        n = f" ({r.checked_count} checked)" if r.checked_count is not None else ""
        return f"ok   {r.command}{n}"
    return f"FAIL {r.command}: {r.counterexample}"


def _render(report: models.Report) -> list[str]:
    cmd = report.command
    v = report.value
    if cmd in ("lat lfp", "lat gfp", "nom free"):
        return [v]
    if cmd in ("lat prefix", "lat postfix", "st denote", "nom universe"):
        return list(v)
    if cmd in ("lat neg", "lat imp"):
        return [v["value"] if v["defined"] else "undefined"]
    if cmd in ("st sub", "st eq", "nom sub"):
        return [_bool(report.holds)]
    if cmd == "st oracle":
        lines = [_bool(report.holds)]
        if report.counterexample:
            lines.append(report.counterexample)
        return lines
    if cmd == "st endo":
        lines = [
            f"universe ({len(v['universe'])}): " + ", ".join(v["universe"]),
            f"lattice {v['lattice']}: {v['elements']} elements",
            f"lfp = {v['lfp']}",
            f"gfp = {v['gfp']}",
        ]
        lines.append(_fmt_check_line(report))
        return lines
    if cmd == "nom classify":
        return [f"pre_fixed: {_bool(v['pre_fixed'])}",
                f"post_fixed: {_bool(v['post_fixed'])}",
                f"fixed: {_bool(v['fixed'])}"]
    if cmd == "nom family":
        return [
            "family_subtypes: " + ", ".join(v["family_subtypes"]),
            "family_supertypes: " + ", ".join(v["family_supertypes"]),
            _fmt_check_line(report),
        ]
    if cmd == "nom least-pre":
        literal = report.reports[0].value
        family = report.reports[1].value
        lines = [
            f"literal least: {literal['least'] or 'none'}",
            "literal minimal set: " + (", ".join(literal["minimal_set"]) or "(empty)"),
            f"family least exists: {_bool(family['family_least_exists'])}",
        ]
        if family["family_candidates"]:
            lines.append("family candidates: " + ", ".join(family["family_candidates"]))
        if family["no_least_witnesses"]:
            a, b = family["no_least_witnesses"]
            lines.append(f"witnesses: {a} and {b} share no non-Null lower bound")
        return lines
    if cmd == "nom neg":
        if v["result"] is not None:
            return [v["result"]]
        return ["no unique result; minimal upper bounds: "
                + ", ".join(v["minimal_upper_bounds"])]
    if cmd == "nom export":
        return [
            f"{len(v['elements'])} elements; "
            f"bottom = {v['bottom']}; top = {v['top']}",
            f"complete lattice: {_bool(v['is_complete_lattice'])}",
        ]
    if cmd == "check all":
        lines = [_fmt_check_line(r) for r in report.reports]
        total = len(report.reports)
        failed = sum(1 for r in report.reports if r.holds is False)
        if failed:
            lines.append(f"{failed} of {total} checks failed (seed {report.seed})")
        else:
            lines.append(f"all {total} checks passed (seed {report.seed})")
        return lines
    # induction / coinduction / dual / covariance / negcheck
    return [_fmt_check_line(report)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="munu",
        description="fixed points on finite lattices and two subtyping engines",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit the report envelope as canonical JSON")
    common.add_argument("--server", metavar="URL", default=None,
                        help="send the request to a running munu server")
    groups = parser.add_subparsers(dest="group", required=True)

    lat = groups.add_parser("lat", help="lattice and fixed-point commands")
    lat_sub = lat.add_subparsers(dest="cmd", required=True)
    for name in ("lfp", "gfp", "prefix", "postfix",
                 "induction", "coinduction", "dual"):
        p = lat_sub.add_parser(name, parents=[common])
        p.add_argument("file", help="a .lat source")
        p.add_argument("fun", help="name of a fun block")
    for name in ("neg", "imp"):
        p = lat_sub.add_parser(name, parents=[common])
        p.add_argument("file", help="a .lat source")
        p.add_argument("lattice", help="name of a lattice block")
        p.add_argument("x")
        if name == "imp":
            p.add_argument("y")

    st = groups.add_parser("st", help="structural (mu-type) commands")
    st_sub = st.add_subparsers(dest="cmd", required=True)
    for name in ("sub", "eq"):
        p = st_sub.add_parser(name, parents=[common])
        p.add_argument("left", help="type expression")
        p.add_argument("right", help="type expression")
        p.add_argument("--defs", metavar="FILE", default=None,
                       help="a .ty definitions file the expressions may use")
    p = st_sub.add_parser("denote", parents=[common])
    p.add_argument("type", help="type expression")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--trunc", action="store_true",
                   help="use the stub-truncated reading of mu")
    p.add_argument("--defs", metavar="FILE", default=None)
    p = st_sub.add_parser("oracle", parents=[common])
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--oracle-depth", type=int, default=4)
    p.add_argument("--defs", metavar="FILE", default=None)
    p = st_sub.add_parser("endo", parents=[common])
    p.add_argument("body", help="constructor body, e.g. 'Unit + Int * X'")
    p.add_argument("--hole", default="X", help="which variable is the hole")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--defs", metavar="FILE", default=None)

    nom = groups.add_parser("nom", help="nominal (class table) commands")
    nom_sub = nom.add_subparsers(dest="cmd", required=True)
    p = nom_sub.add_parser("sub", parents=[common])
    p.add_argument("table", help="a .tbl class table file")
    p.add_argument("left", help="ground type")
    p.add_argument("right", help="ground type")
    p = nom_sub.add_parser("free", parents=[common])
    p.add_argument("table")
    p.add_argument("name", help="a generic class")
    p = nom_sub.add_parser("classify", parents=[common])
    p.add_argument("table")
    p.add_argument("name", help="a generic class")
    p.add_argument("candidate", help="ground type")
    for name in ("family", "least-pre", "covariance"):
        p = nom_sub.add_parser(name, parents=[common])
        p.add_argument("table")
        p.add_argument("name", help="a generic class")
        p.add_argument("--depth", type=int, default=1)
    p = nom_sub.add_parser("neg", parents=[common])
    p.add_argument("table")
    p.add_argument("subject", help="ground type")
    p.add_argument("--depth", type=int, default=1)
    p = nom_sub.add_parser("negcheck", parents=[common])
    p.add_argument("table")
    p.add_argument("neg")
    p.add_argument("pos")
    p.add_argument("base")
    p.add_argument("--depth", type=int, default=1)
    for name in ("universe", "export"):
        p = nom_sub.add_parser(name, parents=[common])
        p.add_argument("table")
        p.add_argument("--depth", type=int, default=1)

    check = groups.add_parser("check", help="oracle property sweeps")
    check_sub = check.add_subparsers(dest="cmd", required=True)
    p = check_sub.add_parser("all", parents=[common])
    p.add_argument("dir", help="directory of .lat/.fun/.ty/.tbl inputs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--oracle-depth", type=int, default=4)

    serve = groups.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    groups.add_parser("schema", help="print the report JSON schema")
    return parser


def _build_request(args) -> tuple[str, object]:
    g, c = args.group, getattr(args, "cmd", None)
    if g == "lat":
        if c in ("neg", "imp"):
            return f"/lattice/{c}", models.LatticeElementRequest(
                source=_read(args.file), lattice=args.lattice,
                x=args.x, y=getattr(args, "y", None))
        return f"/lattice/{c}", models.LatticeFunRequest(
            source=_read(args.file), fun=args.fun)
    if g == "st":
        defs = _read(args.defs) if args.defs else None
        if c in ("sub", "eq"):
            return f"/structural/{c}", models.StructuralPairRequest(
                left=args.left, right=args.right, defs=defs)
        if c == "denote":
            return "/structural/denote", models.DenoteRequest(
                type=args.type, depth=args.depth,
                truncated=args.trunc, defs=defs)
        if c == "oracle":
            return "/structural/oracle", models.StructuralOracleRequest(
                left=args.left, right=args.right,
                oracle_depth=args.oracle_depth, defs=defs)
        return "/structural/endo", models.EndoRequest(
            body=args.body, hole=args.hole, depth=args.depth, defs=defs)
    if g == "nom":
        table = _read(args.table)
        if c == "sub":
            return "/nominal/sub", models.NomSubtypeRequest(
                table=table, left=args.left, right=args.right)
        if c == "free":
            return "/nominal/free", models.NomNameRequest(
                table=table, name=args.name)
        if c == "classify":
            return "/nominal/classify", models.NomClassifyRequest(
                table=table, name=args.name, candidate=args.candidate)
        if c in ("family", "least-pre", "covariance"):
            return f"/nominal/{c}", models.NomNameRequest(
                table=table, name=args.name, depth=args.depth)
        if c == "neg":
            return "/nominal/neg", models.NomNegationRequest(
                table=table, subject=args.subject, depth=args.depth)
        if c == "negcheck":
            return "/nominal/negcheck", models.NomNegCheckRequest(
                table=table, neg=args.neg, pos=args.pos,
                base=args.base, depth=args.depth)
        return f"/nominal/{c}", models.TableRequest(
            table=table, depth=args.depth)
    # check all
    root = Path(args.dir)
    if not root.is_dir():
        raise MunuError(f"{args.dir} is not a directory")
    files = {}
    for path in sorted(root.iterdir()):
        if path.suffix in (".lat", ".fun", ".ty", ".tbl") and path.is_file():
            files[path.name] = path.read_text()
    if not files:
        raise MunuError(f"no .lat/.fun/.ty/.tbl files in {args.dir}")
    return "/check/all", models.CheckRequest(
        files=files, seed=args.seed, depth=args.depth,
        oracle_depth=args.oracle_depth)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.group == "schema":
        print(json.dumps(REPORT_SCHEMA, sort_keys=True, indent=2))
        return 0
    if args.group == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    try:
        path, request = _build_request(args)
        report = call(path, request, server=args.server)
    except MunuError as exc:
        print(f"error: {exc.diagnostic()}", file=sys.stderr)
        return 2

    if args.json:
        print(json.dumps(report.to_payload(), sort_keys=True, indent=2))
    else:
        for line in _render(report):
            print(line)

    if (args.group, args.cmd) in PROPERTY_COMMANDS and report.holds is False:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
