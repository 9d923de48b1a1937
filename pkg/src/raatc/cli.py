"""Command-line front end. Every subcommand prints one JSON document on stdout;
diagnostics go to stderr.

Exit codes: 0 success, 1 bad input, 2 internal inconsistency.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .atlas import compute_atlas, diff_atlas
from .cliques import solve_z, z_shortcut_check
from .cohomology import verify_mixed_lower
from .covering import compare_double
from .errors import InconsistencyError, MissingHypothesisError
from .fixtures import goldens
from .graph import load_graph
from .planner import audit, eval_path, parse_configuration, plan
from .polyhedral import cat_polyprod, parse_complex, parse_profile, tc_polyprod
from .projective import ProjProfile, parse_proj_profile, tc_bounds, wedge_tc
from .tcpoly import check_identities, poly_from_sequence, tc_sequence

log = logging.getLogger("raatc")


class UsageError(ValueError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def cmd_zr(args, inputs):
    g = load_graph(inputs(args.graph))
    w = solve_z(g, args.r)
    out = {"z": w.total, "witness": w.vertex_lists()}
    cert = z_shortcut_check(g, args.r, w)
    if cert:
        out["shortcut"] = {"k": cert.k, "positions": list(cert.positions), "value": cert.value}
    return out


def cmd_tcpoly(args, inputs):
    g = load_graph(inputs(args.graph))
    seq = tc_sequence(g)
    P = poly_from_sequence(seq)
    report = check_identities(P, seq)
    if not report.ok:
        raise InconsistencyError(f"generating-function identities fail: {report.to_json()}")
    return {"P": str(P), "coeffs": P.to_json(), "K": seq.K, "e": seq.e,
            "TC": seq.to_json()["values"], "identities": report.to_json()}


def cmd_double(args, inputs):
    g = load_graph(inputs(args.graph))
    return compare_double(g, args.v, args.rmax).to_json()


def cmd_polyprod(args, inputs):
    K = parse_complex(inputs(args.complex))
    profile = parse_profile(inputs(args.profile))
    out = {"cat": cat_polyprod(profile, K).to_json()}
    try:
        out["tc"] = tc_polyprod(profile, K, args.r).to_json()
    except MissingHypothesisError as exc:
        out["tc"] = {"error": str(exc)}
    return out


def _proj_profile(args, inputs) -> ProjProfile:
    dims = _int_list(args.dims)
    if args.tc_table:
        table = parse_proj_profile({"dims": dims, "tc_table": json.loads(inputs(args.tc_table))})
        return table
    return ProjProfile(tuple(dims))


def cmd_projbounds(args, inputs):
    profile = _proj_profile(args, inputs)
    if args.wedge:
        return wedge_tc(profile.dims, profile.tc_table).to_json()
    if not args.complex:
        raise UsageError("projbounds needs -K unless --wedge is given")
    return tc_bounds(profile, parse_complex(inputs(args.complex))).to_json()


def cmd_cohomcheck(args, inputs):
    K = parse_complex(inputs(args.complex))
    check = verify_mixed_lower(_int_list(args.dims), K, _int_list(args.s1), _int_list(args.s2))
    return check.to_json()


def cmd_plan(args, inputs):
    c1 = parse_configuration(inputs(args.source))
    c2 = parse_configuration(inputs(args.target))
    p = plan(c1, c2)
    times = [i / args.steps for i in range(args.steps + 1)]
    return {"path": p.to_json(),
            "samples": [{"t": t, "points": eval_path(p, t).to_json()["points"]} for t in times]}


def cmd_audit(args, inputs):
    K = parse_complex(inputs(args.complex))
    report = audit(K, _int_list(args.dims), args.n, args.seed, workers=args.workers)
    out = report.to_json()
    if not report.passed:
        log.error("audit failed; counterexamples are in the report")
        raise _AuditFailure(out)
    return out


class _AuditFailure(InconsistencyError):
    def __init__(self, report):
        super().__init__("audit failed")
        self.report = report


def cmd_fixtures(args, inputs):
    computed = json.loads(json.dumps(compute_atlas()))
    if args.write:
        Path(args.write).write_text(json.dumps(computed, indent=1, sort_keys=True) + "\n")
        return {"written": args.write}
    golden = json.loads(inputs(args.goldens)) if args.goldens else goldens()
    diffs = diff_atlas(computed, golden)
    if diffs:
        raise _FixtureMismatch(diffs)
    return {"match": True, "sections": sorted(computed)}


class _FixtureMismatch(InconsistencyError):
    def __init__(self, diffs):
        super().__init__(f"{len(diffs)} golden mismatches")
        self.diffs = diffs


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="raatc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--quiet", action="store_true", help="silence stderr logging")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("zr", help="clique optimisation number z_r")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-r", type=int, required=True)
    s.set_defaults(func=cmd_zr, files=("graph",))

    s = sub.add_parser("tcpoly", help="TC sequence and generating-function numerator")
    s.add_argument("-g", "--graph", required=True)
    s.set_defaults(func=cmd_tcpoly, files=("graph",))

    s = sub.add_parser("double", help="compare TC_r of a graph double with its base")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-v", type=int, required=True)
    s.add_argument("--rmax", type=int)
    s.set_defaults(func=cmd_double, files=("graph",))

    s = sub.add_parser("polyprod", help="cat and TC_r of a polyhedral product")
    s.add_argument("-K", "--complex", required=True)
    s.add_argument("--profile", required=True)
    s.add_argument("-r", type=int, default=2)
    s.set_defaults(func=cmd_polyprod, files=("complex", "profile"))

    s = sub.add_parser("projbounds", help="TC bounds for products of projective spaces")
    s.add_argument("-K", "--complex")
    s.add_argument("--dims", required=True)
    s.add_argument("--tc-table")
    s.add_argument("--wedge", action="store_true")
    s.set_defaults(func=cmd_projbounds, files=("complex", "tc_table"))

    s = sub.add_parser("cohomcheck", help="verify the mixed zero-divisor product")
    s.add_argument("-K", "--complex", required=True)
    s.add_argument("--dims", required=True)
    s.add_argument("--s1", required=True)
    s.add_argument("--s2", required=True)
    s.set_defaults(func=cmd_cohomcheck, files=("complex",))

    s = sub.add_parser("plan", help="motion plan between two configurations")
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--to", dest="target", required=True)
    s.add_argument("--steps", type=int, default=4, help="evaluate the path at this many intervals")
    s.set_defaults(func=cmd_plan, files=("source", "target"))

    s = sub.add_parser("audit", help="randomised audit of the motion planner")
    s.add_argument("-K", "--complex", required=True)
    s.add_argument("--dims", required=True)
    s.add_argument("-n", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_audit, files=("complex",))

    s = sub.add_parser("fixtures", help="recompute the atlas and diff it against the goldens")
    s.add_argument("--goldens", help="golden JSON (defaults to the packaged copy)")
    s.add_argument("--write", metavar="FILE", help="write the computed atlas instead of diffing")
    s.set_defaults(func=cmd_fixtures, files=("goldens",))
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.INFO,
                        format="raatc: %(message)s", stream=sys.stderr)

    contents: dict[str, str] = {}

    def inputs(path: str) -> str:
        if path not in contents:
            contents[path] = _read(path)
        return contents[path]

    argv_echo = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    result: dict[str, Any] = {"command": args.command, "argv": argv_echo}
    code = 0
    try:
        outputs = args.func(args, inputs)
        result["outputs"] = outputs
    except InconsistencyError as exc:
        code = 2
        result["error"] = {"kind": "inconsistency", "message": str(exc)}
        if isinstance(exc, _AuditFailure):
            result["outputs"] = exc.report
        if isinstance(exc, _FixtureMismatch):
            result["error"]["diffs"] = exc.diffs
        log.error("%s", exc)
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        code = 1
        result["error"] = {"kind": "input", "message": str(exc)}
        log.error("%s", exc)
    digest = hashlib.sha256()
    digest.update(json.dumps({"command": args.command, "opts": _canonical_opts(args)},
                             sort_keys=True).encode())
    for path in sorted(contents):
        digest.update(contents[path].encode())
    result["inputs_digest"] = digest.hexdigest()
    result["version"] = __version__
    result["wall_time"] = round(time.perf_counter() - start, 6)
    out.write(json.dumps(result, sort_keys=True) + "\n")
    return code


def _canonical_opts(args) -> dict:
    skip = set(getattr(args, "files", ())) | {"func", "files", "quiet"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
