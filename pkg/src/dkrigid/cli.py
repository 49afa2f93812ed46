"""Command-line entry point. Every command prints one JSON document on stdout.

Exit codes: 0 verdict produced, 2 input error, 3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from .combinat import hendrickson_checks, is_dk_rigid_combinatorial
from .construct import ConstructionError, build_global_family
from .core import (
    ConstructionStep,
    Framework,
    FrameworkFormatError,
    Graph,
    load_document,
    framework_from_json,
    graph_from_json,
    sample_generic,
    sample_seeds,
)
from .matrices import is_generically_dk_rigid
from .probe import probe
from .stress import Certificate, StressError, global_sufficiency, stress_space, target_rank

log = logging.getLogger("dkrigid")

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


class InputError(Exception):
    pass


def _read_doc(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return load_document(text)


def _read_input(path: str, d: int | None) -> tuple[Graph, Framework | None]:
    doc = _read_doc(path)
    graph = graph_from_json(doc)
    if "positions" in doc:
        f = framework_from_json(doc)
        if d is not None and f.d != d:
            raise InputError(f"framework has d={f.d} but -d {d} was given")
        return graph, f
    return graph, None


def _check_dk(d: int, k: int) -> None:
    if not 1 <= k < d:
        raise InputError(f"need 1 <= k < d, got d={d}, k={k}")


def cmd_check(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    _check_dk(args.d, args.k)
    graph, _ = _read_input(args.graph, None)
    out: dict[str, Any] = {"command": "check", "d": args.d, "k": args.k, "mode": args.mode}
    code = EXIT_OK
    verdicts = {}
    if args.mode in ("combinatorial", "both"):
        verdicts["combinatorial"] = is_dk_rigid_combinatorial(graph, args.d, args.k, seed=args.seed)
    if args.mode in ("generic", "both"):
        verdicts["generic"] = is_generically_dk_rigid(graph, args.d, args.k, seed=args.seed)
    for name, v in verdicts.items():
        out[name] = v.to_json()
    answers = {v.answer for v in verdicts.values()}
    out["rigid"] = next(iter(answers)) if len(answers) == 1 else None
    if args.mode == "both":
        out["agree"] = len(answers) == 1
        if not out["agree"]:
            log.error("combinatorial and generic-rank verdicts disagree")
            code = EXIT_INTERNAL
    return out, code


def cmd_global(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    _check_dk(args.d, args.k)
    graph, framework = _read_input(args.input, args.d)
    out: dict[str, Any] = {"command": "global", "d": args.d, "k": args.k}
    if graph.is_complete():
        out["status"] = "globally-rigid (complete graph)"
        return out, EXIT_OK
    screen = hendrickson_checks(graph, args.d, args.k)
    out["necessary"] = screen.to_json()
    if not screen:
        failed = [c for c, ok in screen.witness["conditions"].items() if not ok]
        out["status"] = f"not-globally-rigid (necessary condition failed: {', '.join(failed)})"
        return out, EXIT_OK
    if framework is not None:
        candidates = [framework]
    else:
        candidates = [sample_generic(graph, args.d, s) for s in sample_seeds(args.seed, args.samples)]
    empty = True
    for t, f in enumerate(candidates):
        if stress_space(f, args.k):
            empty = False
        cert = global_sufficiency(f, args.k, seed=args.seed + t)
        if cert is not None:
            out["status"] = "globally-rigid (certified)"
            out["rank_omega"] = cert.rank_omega
            out["certificate"] = cert.to_json()
            return out, EXIT_OK
    out["status"] = "inconclusive"
    if empty:
        out["explanation"] = "necessary conditions pass but the dilation stress space is trivial"
    else:
        out["explanation"] = (
            f"no stress with rank Omega = {target_rank(graph.n, args.d, args.k)} found"
        )
    return out, EXIT_OK


def cmd_stress(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    graph, framework = _read_input(args.input, args.d)
    if framework is None:
        if args.d is None:
            raise InputError("graph-only input needs -d to sample a realization")
        framework = sample_generic(graph, args.d, args.seed)
    _check_dk(framework.d, args.k)
    basis = stress_space(framework, args.k)
    return {
        "command": "stress",
        "k": args.k,
        "framework": framework.to_json(),
        "dimension": len(basis),
        "basis": [[str(x) for x in s.values] for s in basis],
    }, EXIT_OK


def cmd_extend(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    cert = Certificate.from_json(_read_doc(args.cert))
    try:
        raw = json.loads(Path(args.steps).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read steps: {exc}") from exc
    if isinstance(raw, dict):
        raw = raw.get("steps", [])
    if not isinstance(raw, list):
        raise InputError("steps document must be a list of steps")
    steps = [ConstructionStep.from_json(s) for s in raw]
    result = build_global_family(cert, steps, rng_seed=args.seed)
    return {"command": "extend", "certificate": result.to_json()}, EXIT_OK


def cmd_probe(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    _check_dk(args.d, args.k)
    if args.d - args.k > 2:
        raise InputError("probe needs d - k <= 2")
    if not 1 <= args.nmax <= 7:
        raise InputError("--nmax must be between 1 and 7")
    report = probe(args.d, args.k, args.nmax, seed=args.seed)
    return {"command": "probe", **report.to_json(include_records=args.records)}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dkrigid", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide (d,k)-rigidity of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--mode", choices=["combinatorial", "generic", "both"], default="both")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("global", help="screen and certify global (d,k)-rigidity")
    p.add_argument("--input", required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=3)
    p.set_defaults(func=cmd_global)

    p = sub.add_parser("stress", help="print a basis of the dilation stress space")
    p.add_argument("--input", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-d", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_stress)

    p = sub.add_parser("extend", help="extend a certificate by 1-extensions and edge additions")
    p.add_argument("--cert", required=True)
    p.add_argument("--steps", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("probe", help="compare conjectured conditions on small graphs")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--records", action="store_true", help="include per-graph records")
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        out, code = args.func(args)
    except (InputError, FrameworkFormatError, ConstructionError, StressError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except AssertionError as exc:
        log.error("internal assertion failed: %s", exc)
        return EXIT_INTERNAL
    print(json.dumps(out, indent=2, sort_keys=True, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
