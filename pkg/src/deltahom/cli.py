"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 unreadable or invalid diagram, 3 unmet
precondition, 4 self-test failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import corpus
from . import handcuff as hc
from . import homotopy as ho
from . import invariants as inv
from . import moves as mv
from .diagram import Diagram, DiagramError, parse, serialize, validate

EXIT_OK, EXIT_USAGE, EXIT_DIAGRAM, EXIT_PRECONDITION, EXIT_PROPERTY = 0, 1, 2, 3, 4
JOBS_ENV = "DELTAHOM_JOBS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read(path: str) -> Diagram:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise DiagramError(f"cannot read {path}: {exc.strerror}") from exc
    d = parse(text)
    problems = validate(d)
    if problems:
        raise DiagramError("; ".join(problems))
    return d


def _handcuff(d: Diagram) -> hc.HandcuffDiagram:
    if d.kind and d.kind.startswith("handcuff"):
        n = int(d.kind.split()[1])
    else:
        n = sum(1 for lab in d.label_names() if lab.startswith("g") and lab[1:].isdigit())
    return hc.validate_handcuff(d, n)


def _write(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    d = _read(args.file)
    kind = d.kind or "link"
    print(f"ok: {kind}, {len(d.crossings)} crossings, {len(d.vertices)} vertices")
    if kind.startswith("handcuff"):
        h = _handcuff(d)
        print(f"loop orientations coherent: {'yes' if hc.orientations_coherent(h) else 'no'}")
    return EXIT_OK


def _target(args) -> Diagram:
    d = _read(args.file)
    if args.forget or args.disksum:
        h = _handcuff(d)
        for k in args.forget or ():
            h = hc.delete_loop(h, k)
        if args.disksum:
            return hc.disk_sum(h)
        return h.diagram
    return d


def cmd_inv(args) -> int:
    d = _target(args)
    rows: list[tuple[str, str]] = []
    if args.lk:
        a, b = args.lk
        rows.append((f"lk({a},{b})", str(inv.linking_number(d, a, b))))
    if args.total_lk:
        rows.append(("Lk", str(inv.total_linking(d))))
    if args.conway:
        rows.append(("conway", str(inv.conway(d))))
    if args.a2:
        rows.append(("a2", str(inv.a2(d))))
    if args.jones:
        rows.append(("jones", str(inv.jones(d))))
    if args.v3:
        rows.append(("v3", str(inv.v3(d))))
    if args.mu123:
        rows.append(("mu123", str(inv.mu123(_handcuff(d)))))
    if not rows:
        raise UsageError("no invariant requested")
    if len(rows) == 1:
        print(rows[0][1])
    else:
        for name, value in rows:
            print(f"{name} = {value}")
    return EXIT_OK


def cmd_disksum(args) -> int:
    h = _handcuff(_read(args.file))
    for k in args.forget or ():
        h = hc.delete_loop(h, k)
    for spec in args.twist or ():
        edge, _, count = spec.partition(":")
        try:
            edge_i, count_i = int(edge), int(count or "1")
        except ValueError as exc:
            raise UsageError(f"bad --twist {spec!r}; expected EDGE:COUNT") from exc
        for _ in range(abs(count_i)):
            h = hc.band_twist(h, edge_i, 1 if count_i > 0 else -1)
    _write(serialize(hc.disk_sum(h)), args.output)
    return EXIT_OK


def _print_report(name: str, rep: ho.HomotopyReport) -> None:
    print(f"{name} = {rep.reduced}")
    print(f"raw = {rep.raw}")
    print(f"modulus = {rep.modulus}")
    for key, value in rep.ingredients.items():
        if isinstance(value, dict):
            value = ", ".join(f"lk(g{a},g{b})={v}" for (a, b), v in value.items())
        print(f"{key} = {value}")


def cmd_homotopy(args) -> int:
    h = _handcuff(_read(args.file))
    if args.command == "n12":
        rep = ho.n12(h)
    elif args.command == "n123":
        rep = ho.n123(h, jobs=args.jobs)
    else:
        rep = ho.n_general(h)
    _print_report(args.command, rep)
    return EXIT_OK


def _site_line(i: int, s: mv.MoveSite) -> str:
    darts = " ".join(f"{a}{'+' if fw else '-'}" for a, fw in ((x[-2], x[-1]) for x in s.darts))
    params = " ".join(f"{k}={v}" for k, v in s.params)
    loc = ",".join(str(x) for x in s.location)
    return " ".join(p for p in (f"{i}", s.kind, f"at {loc}", darts, params) if p)


def cmd_move(args) -> int:
    d = _read(args.file)
    kinds = [args.kind] if args.kind else list(mv.KINDS)
    for k in kinds:
        if k not in mv.KINDS:
            raise UsageError(f"unknown move kind {k!r}; choose from {', '.join(mv.KINDS)}")
    if args.list_sites or args.site is None:
        i = 0
        for k in kinds:
            for s in mv.find_sites(d, k):
                print(_site_line(i, s))
                i += 1
        return EXIT_OK
    if not args.kind:
        raise UsageError("--site needs --kind")
    sites = mv.find_sites(d, args.kind)
    if not 0 <= args.site < len(sites):
        raise mv.MoveError(f"no {args.kind} site {args.site}; {len(sites)} available")
    _write(serialize(mv.apply(d, sites[args.site])), args.output)
    return EXIT_OK


_MOVE_GROUPS = {"reidemeister": sorted(mv.REIDEMEISTER), "delta": ["delta+", "delta-"]}


def cmd_walk(args) -> int:
    d = _read(args.file)
    allowed: list[str] = []
    for item in args.allowed.split(","):
        item = item.strip()
        if item in _MOVE_GROUPS:
            allowed += _MOVE_GROUPS[item]
        elif item in mv.KINDS:
            allowed.append(item)
        elif item:
            raise UsageError(f"unknown move kind {item!r}")
    labels = args.labels.split(",") if args.labels else None
    res = mv.random_walk(d, allowed, args.self_only, args.steps, args.seed, labels)
    _write(f"# {res.applied} moves applied, seed {args.seed}\n" + serialize(res.diagram), args.output)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from . import selftest

    only = set(args.suite) if args.suite else None
    if only:
        unknown = only - set(selftest.SUITES)
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(sorted(unknown))}")
    failed = 0
    for name, fn in selftest.SUITES.items():
        if only and name not in only:
            continue
        res = fn(args.seed, args.iters)
        print(res.summary(), flush=True)
        for detail, diagrams in res.failures:
            print(f"  {detail}")
            for text in diagrams:
                print("    " + text.rstrip("\n").replace("\n", "\n    "))
        failed += not res.ok
    print(f"{'all suites passed' if not failed else f'{failed} suite(s) failed'} (seed {args.seed}, iters {args.iters})")
    return EXIT_PROPERTY if failed else EXIT_OK


def cmd_corpus(args) -> int:
    if args.action == "list":
        for name in corpus.names():
            print(f"{name}: {corpus.entry(name).description}")
        return EXIT_OK
    if not args.name:
        raise UsageError("corpus emit needs an entry name")
    try:
        text = corpus.emit(args.name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    _write(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="deltahom", description="Invariants of spatial handcuff graph diagrams.")
    p.add_argument(
        "--jobs",
        type=int,
        default=_default_jobs(),
        help=f"worker processes for heavy invariants (default from ${JOBS_ENV}, else 1)",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="parse and check a diagram file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("inv", help="print invariants of a link or of a handcuff's disk sum")
    s.add_argument("file")
    s.add_argument("--disksum", action="store_true", help="use the disk-sum knot of a handcuff")
    s.add_argument("--forget", type=int, action="append", metavar="K", help="delete loop K first")
    s.add_argument("--lk", nargs=2, metavar=("A", "B"))
    s.add_argument("--total-lk", action="store_true")
    s.add_argument("--conway", action="store_true")
    s.add_argument("--a2", action="store_true")
    s.add_argument("--jones", action="store_true")
    s.add_argument("--v3", action="store_true")
    s.add_argument("--mu123", action="store_true")
    s.set_defaults(func=cmd_inv)

    s = sub.add_parser("disksum", help="write the disk-sum knot of a handcuff")
    s.add_argument("file")
    s.add_argument("--forget", type=int, action="append", metavar="K")
    s.add_argument("--twist", action="append", metavar="EDGE:COUNT", help="full twists in an edge band")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_disksum)

    for name, text in (
        ("n12", "2-handcuff invariant"),
        ("n123", "3-handcuff invariant"),
        ("ngen", "invariant for any number of loops"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("file")
        s.set_defaults(func=cmd_homotopy)

    s = sub.add_parser("move", help="list move sites or apply one")
    s.add_argument("file")
    s.add_argument("--kind")
    s.add_argument("--site", type=int)
    s.add_argument("--list-sites", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_move)

    s = sub.add_parser("walk", help="apply a seeded random sequence of moves")
    s.add_argument("file")
    s.add_argument("--allowed", default="reidemeister", help="comma list of move kinds or groups")
    s.add_argument("--self-only", action="store_true", help="delta sites on one label only")
    s.add_argument("--labels", help="comma list of labels moves may touch")
    s.add_argument("--steps", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_walk)

    s = sub.add_parser("selftest", help="run the randomized property suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--iters", type=int, default=3)
    s.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    s.set_defaults(func=cmd_selftest)

    s = sub.add_parser("corpus", help="list or emit reference diagrams")
    s.add_argument("action", choices=("list", "emit"))
    s.add_argument("name", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"deltahom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ho.HomotopyError, inv.InvariantError, mv.MoveError) as exc:
        print(f"deltahom: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except DiagramError as exc:
        print(f"deltahom: invalid diagram: {exc}", file=sys.stderr)
        return EXIT_DIAGRAM


if __name__ == "__main__":
    sys.exit(main())
