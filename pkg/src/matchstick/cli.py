"""Command-line surface: solve -> assemble -> verify -> export pipelines.

Exit codes: 0 success, 1-5 verification failures by verdict class
(unit, regular4, planar, no_additional, indeterminate-band), 64 usage
errors, 70 internal errors.
"""

from __future__ import annotations

import argparse
import sys

from mpmath import mpf, nstr

from . import fixtures
from .errors import MatchstickError, NoPassingN
from .graphio import read_graph, write_graph
from .precision import set_precision

EX_USAGE = 64
EX_INTERNAL = 70

_VERDICT_EXIT = {"unit": 1, "regular4": 2, "planar": 3, "no_additional": 4}
_DEFAULT_REQUIRED = ("unit", "planar", "no_additional")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _load_graph(spec: str):
    """Accept either a graph file path or a built-in fixture name."""
    if spec in fixtures.FIXTURE_NAMES:
        return fixtures.load(spec)
    return read_graph(spec)


def _solved_template(name: str):
    from .linkage import build_template

    if name not in ("g1", "g2"):
        raise SystemExit(EX_USAGE)
    return build_template(fixtures.load(name))


def _print_readout(template_name: str, readout) -> None:
    ref = fixtures.REFERENCE_READOUTS.get(template_name, {})
    rows = [
        ("omega_check", readout.omega_check, None),
        ("alpha", readout.alpha, ref.get("alpha")),
        ("beta", readout.beta, ref.get("beta")),
        ("gamma", readout.gamma, ref.get("gamma")),
        ("delta", readout.delta, ref.get("delta")),
        ("GH", readout.gh, ref.get("gh")),
    ]
    for name, value, reference in rows:
        if value is None:
            continue
        line = f"{name:>12}: {nstr(value, 22)}"
        if reference:
            delta = value - mpf(reference)
            line += f"   reference {reference}   delta {nstr(delta, 3)}"
        print(line)


def _cmd_fixtures(args) -> int:
    if args.action == "list":
        for name in fixtures.FIXTURE_NAMES:
            raw = fixtures.load_raw(name)
            print(
                f"{name:>10}  class={raw.precision_class:<6} rows={len(raw.coordinates):>3}"
                f"  declared_triangles={raw.declared_triangles}"
                + (f"  n={raw.n}" if raw.n else "")
            )
        return 0
    name = args.name
    if name not in fixtures.FIXTURE_NAMES:
        print(f"unknown fixture {name!r}", file=sys.stderr)
        return EX_USAGE
    g = fixtures.load(name)
    from .graph import degree_histogram

    print(f"fixture {name}: {len(g.vertices)} vertices, {len(g.edges)} edges")
    print(f"degrees: {dict(sorted(degree_histogram(g).items()))}")
    print(f"designated triangles: {len(g.designated) or g.meta.get('declared_triangles')}")
    print(f"labels: {dict(sorted(g.labels.items()))}")
    return 0


def _cmd_solve(args) -> int:
    from .assemble import mirror_close
    from .linkage import RingSpec, continue_in_n, extract_angles, solve

    t = _solved_template(args.template)
    tol_inf = mpf(args.tol) if args.tol else None
    anchor = t.anchor_n
    if args.n == anchor:
        result = solve(t, RingSpec(args.n), tol_inf=tol_inf)
    else:
        result = continue_in_n(t, solve(t, RingSpec(anchor)), args.n, tol_inf=tol_inf)
    readout = extract_angles(t, result)
    base = mirror_close(t, result)
    print(
        f"solved {args.template} at n={args.n}: residual {nstr(result.residual_inf, 3)}"
        f" after {result.iterations} iterations; min singular value"
        f" {result.min_singular:.3e}"
    )
    _print_readout(args.template, readout)
    if args.output:
        write_graph(base, args.output)
        print(f"wrote {args.output}")
    return 0


def _cmd_angles(args) -> int:
    from .geometry import distance
    from .linkage import _angle_deg  # annotated-triple measurement

    g = _load_graph(args.file)
    triples = g.meta.get("angles", {})
    if not triples:
        print("graph carries no angle annotations", file=sys.stderr)
        return EX_USAGE

    class _R:
        pass

    r = _R()
    for name in ("alpha", "beta", "gamma", "delta"):
        tris = triples.get(name)
        setattr(
            r,
            name,
            _angle_deg(*(g.vertices[i] for i in tris[0])) if tris else None,
        )
    r.gh = (
        distance(g.vertices[g.labels["G"]], g.vertices[g.labels["H"]])
        if "G" in g.labels and "H" in g.labels
        else None
    )
    omega = None
    if all(k in g.labels for k in "AFCD"):
        from mpmath import atan2, degrees

        fa = g.vertices[g.labels["A"]] - g.vertices[g.labels["F"]]
        dc = g.vertices[g.labels["C"]] - g.vertices[g.labels["D"]]
        omega = degrees(atan2(abs(fa.cross(dc)), fa.dot(dc)))
    r.omega_check = omega
    template = g.meta.get("template") or g.meta.get("fixture") or ""
    _print_readout(template, r)
    return 0


def _cmd_assemble(args) -> int:
    from .assemble import chain_assemble, ring_assemble
    from .linkage import RingSpec

    if args.ring is not None:
        base = _load_graph(args.file)
        out = ring_assemble(base, RingSpec(args.ring))
    else:
        pieces = []
        for item in args.chain.split(","):
            item = item.strip()
            flip = item.endswith(":flip")
            if flip:
                item = item[: -len(":flip")]
            pieces.append((_load_graph(item), "flipped" if flip else "direct"))
        out = chain_assemble(pieces)
    print(
        f"assembled {out.meta.get('kind')}: {len(out.vertices)} vertices,"
        f" {len(out.edges)} edges, {len(out.designated)} designated triangles"
    )
    write_graph(out, args.output)
    print(f"wrote {args.output}")
    return 0


def _cmd_verify(args) -> int:
    import json

    from .verify import ToleranceProfile, verify

    g = _load_graph(args.file)
    prof_name = args.profile
    if prof_name is None:
        prof_name = "sketch" if g.meta.get("precision_class") == "sketch" else (
            "fixture" if g.meta.get("fixture") else "solved"
        )
    try:
        prof = ToleranceProfile.named(prof_name)
    except ValueError:
        print(f"unknown profile {prof_name!r}", file=sys.stderr)
        return EX_USAGE
    required = _DEFAULT_REQUIRED if args.require is None else tuple(
        s.strip() for s in args.require.split(",") if s.strip()
    )
    for name in required:
        if name not in _VERDICT_EXIT:
            print(f"unknown verdict class {name!r}", file=sys.stderr)
            return EX_USAGE
    report = verify(g, prof)
    print(report.to_text())
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, sort_keys=True, indent=1)
            fh.write("\n")
        print(f"wrote {args.report}")
    failing = report.first_failing(required)
    if failing is None:
        return 0
    if failing == "planar" and not report.crossings and not report.incidences:
        return 5  # only the indeterminate band failed
    return _VERDICT_EXIT[failing]


def _cmd_search(args) -> int:
    from .linkage import minimal_n_search
    from .verify import ToleranceProfile

    t = _solved_template(args.template)
    criteria = (
        tuple(s.strip() for s in args.criteria.split(",") if s.strip())
        if args.criteria
        else ("unit", "regular4", "planar", "no_additional")
    )
    try:
        profile = ToleranceProfile.named(args.profile)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE
    try:
        result = minimal_n_search(t, (args.start, args.stop), profile=profile, criteria=criteria)
    except NoPassingN as exc:
        print(exc)
        return 1
    print(result.table())
    print(f"smallest passing n: {result.smallest_passing}")
    return 0


def _cmd_svg(args) -> int:
    from .svg import export_svg

    g = _load_graph(args.file)
    doc = export_svg(g, scale=args.scale, stroke=args.stroke, insets=args.insets or 0)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(doc)
    print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="msf", description=__doc__)
    p.add_argument("--precision", type=int, help="working precision in decimal digits")
    sub = p.add_subparsers(dest="command", required=True)

    fx = sub.add_parser("fixtures", help="list or inspect the built-in figure tables")
    fx.add_argument("action", choices=("list", "show"))
    fx.add_argument("name", nargs="?", help="fixture name for 'show'")
    fx.set_defaults(func=_cmd_fixtures)

    so = sub.add_parser("solve", help="solve rail closure for a template")
    so.add_argument("--template", required=True, choices=("g1", "g2"))
    so.add_argument("--n", required=True, type=int)
    so.add_argument("--tol", help="residual tolerance, e.g. 1e-50")
    so.add_argument("-o", "--output", help="write the solved base graph here")
    so.set_defaults(func=_cmd_solve)

    an = sub.add_parser("angles", help="print a solved graph's readout vs references")
    an.add_argument("file")
    an.set_defaults(func=_cmd_angles)

    asm = sub.add_parser("assemble", help="build a ring or chain from base graphs")
    group = asm.add_mutually_exclusive_group(required=True)
    group.add_argument("--ring", type=int, metavar="N")
    group.add_argument("--chain", metavar="SPEC", help="comma list of FILE[:flip]")
    asm.add_argument("file", nargs="?", help="base graph file for --ring")
    asm.add_argument("-o", "--output", required=True)
    asm.set_defaults(func=_cmd_assemble)

    ve = sub.add_parser("verify", help="certify a graph and set the exit code")
    ve.add_argument("file", help="graph file or fixture name")
    ve.add_argument("--profile", choices=("solved", "fixture", "sketch"))
    ve.add_argument("--report", help="write the JSON report here")
    ve.add_argument("--require", help="comma list of verdicts (default unit,planar,no_additional)")
    ve.set_defaults(func=_cmd_verify)

    se = sub.add_parser("search", help="minimal-n sweep with per-n verdicts")
    se.add_argument("--template", required=True, choices=("g1", "g2"))
    se.add_argument("--from", dest="start", required=True, type=int)
    se.add_argument("--to", dest="stop", required=True, type=int)
    se.add_argument("--profile", default="solved")
    se.add_argument("--criteria", help="comma list of required verdicts")
    se.set_defaults(func=_cmd_search)

    sv = sub.add_parser("svg", help="export a graph drawing")
    sv.add_argument("file")
    sv.add_argument("-o", "--output", required=True)
    sv.add_argument("--insets", type=int, nargs="?", const=4, default=0)
    sv.add_argument("--scale", type=float, default=60.0)
    sv.add_argument("--stroke", type=float, default=0.02)
    sv.set_defaults(func=_cmd_svg)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EX_USAGE
    if args.precision is not None:
        try:
            set_precision(args.precision)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EX_USAGE
    if args.command == "assemble" and args.ring is not None and not args.file:
        print("error: --ring requires a base graph file", file=sys.stderr)
        return EX_USAGE
    if args.command == "fixtures" and args.action == "show" and not args.name:
        print("error: 'show' requires a fixture name", file=sys.stderr)
        return EX_USAGE
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EX_INTERNAL
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE
    except MatchstickError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EX_INTERNAL
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EX_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
