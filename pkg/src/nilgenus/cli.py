"""Command-line front end.

Subcommands map one-to-one onto library operations: validate,
canonicalize, equiv, genus, table, orbits, and selfcheck.  Parameter
tuples are given as file paths or inline JSON objects of the form
{"type": "2,1,1", "t": {"123": 5, "134": 5, "124": 1}}.  Output is JSON
(default) or a plain-text rendering of the same data; all orderings are
fixed, so the output is byte-deterministic.  Exit codes: 0 success,
1 invalid input, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arith import NilgenusError
from .params import (
    ParamTuple,
    from_json_dict,
    modulus_profile,
    validate_membership,
)
from . import deciders, genus, orbits, selfcheck


def _load_tuple(arg: str) -> ParamTuple:
    text = arg
    if not arg.lstrip().startswith("{"):
        path = Path(arg)
        if not path.exists():
            raise NilgenusError(f"no such file: {arg}")
        text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NilgenusError(f"malformed JSON in {arg!r}: {exc}") from exc
    return from_json_dict(data)


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    else:
        _emit_text(payload, indent=0)


def _emit_text(value, indent: int, key: str | None = None) -> None:
    pad = "  " * indent
    label = f"{key}: " if key is not None else ""
    if isinstance(value, dict):
        sys.stdout.write(f"{pad}{key}:\n" if key else "")
        for k, v in value.items():
            _emit_text(v, indent + (1 if key else 0), k)
    elif isinstance(value, list):
        if not value:
            sys.stdout.write(f"{pad}{label}[]\n")
        elif all(not isinstance(v, (dict, list)) for v in value):
            sys.stdout.write(f"{pad}{label}{', '.join(map(str, value))}\n")
        else:
            sys.stdout.write(f"{pad}{label}\n")
            for v in value:
                _emit_text(v, indent + 1)
    else:
        sys.stdout.write(f"{pad}{label}{value}\n")


def _cmd_validate(args) -> int:
    t = _load_tuple(args.tuple)
    report = validate_membership(t, canonical=args.canonical)
    payload = report.to_json_dict()
    payload["parameters"] = t.to_json_dict()
    _emit(payload, args.format)
    return 0


def _cmd_canonicalize(args) -> int:
    t = _load_tuple(args.tuple)
    canon = genus.canonicalize(t)
    payload = {
        "canonical": canon.to_json_dict(),
        "changed": canon.entries != t.entries,
        "parameters": t.to_json_dict(),
    }
    _emit(payload, args.format)
    return 0


def _cmd_equiv(args) -> int:
    s = _load_tuple(args.first)
    t = _load_tuple(args.second)
    primes = tuple(args.primes) if args.primes else None
    decision = deciders.decide_same_finite_quotients(s, t, primes=primes)
    payload = decision.to_json_dict()
    if args.isomorphism:
        payload["z_equivalent"] = genus.z_equivalent(s, t).to_json_dict()
    payload["parameters"] = {"s": s.to_json_dict(), "t": t.to_json_dict()}
    _emit(payload, args.format)
    return 0


def _cmd_genus(args) -> int:
    s = _load_tuple(args.tuple)
    result = genus.enumerate_genus(s)
    payload = result.to_json_dict()
    payload["verdict"] = result.size
    _emit(payload, args.format)
    return 0


def _cmd_table(args) -> int:
    rows = genus.genus_size_table(args.type, tuple(args.primes))
    payload = {
        "type": args.type,
        "sizes": [{"p": p, "genus_size": size} for p, size in rows],
    }
    _emit(payload, args.format)
    return 0


def _cmd_orbits(args) -> int:
    space = orbits.build_orbit_space(args.a, args.b, args.c)
    payload: dict = {
        "space": {
            "a": space.a, "b": space.b, "c": space.c,
            "k": space.k, "m1": space.m1, "m2": space.m2,
            "points": len(space.points),
        }
    }
    if args.prime is not None:
        partition = orbits.local_orbit_partition(space, args.prime)
        payload["prime"] = args.prime
        payload["orbits"] = [sorted([list(p) for p in cls]) for cls in
                             sorted(partition, key=min)]
    else:
        result = orbits.global_orbit_partition(space, args.window)
        payload["window"] = result.final_bound
        payload["orbits"] = [sorted([list(p) for p in cls]) for cls in
                             sorted(result.partition, key=min)]
    _emit(payload, args.format)
    return 0


def _cmd_selfcheck(args) -> int:
    report = selfcheck.run_selfcheck(args.scale)
    _emit(report.to_json_dict(), args.format)
    return 0 if report.ok else 2


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="nilgenus",
        description=(
            "Decide whether finitely generated torsion-free nilpotent groups "
            "of Hirsch length at most 5 have the same finite quotients, and "
            "enumerate genus classes."
        ),
    )
    parser.add_argument(
        "--format", choices=("json", "text"), default="json",
        help="output rendering (default json)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a parameter tuple against its family")
    p.add_argument("tuple", help="file path or inline JSON")
    p.add_argument("--canonical", action="store_true",
                   help="also require the canonical representative box")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("canonicalize", help="canonical representative of a tuple")
    p.add_argument("tuple")
    p.set_defaults(fn=_cmd_canonicalize)

    p = sub.add_parser("equiv", help="decide same-finite-quotients for two tuples")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--primes", type=int, nargs="+",
                   help="override the checked primes (demonstration only)")
    p.add_argument("--isomorphism", action="store_true",
                   help="also run the integer equivalence test")
    p.set_defaults(fn=_cmd_equiv)

    p = sub.add_parser("genus", help="enumerate the genus of a tuple")
    p.add_argument("tuple")
    p.set_defaults(fn=_cmd_genus)

    p = sub.add_parser("table", help="genus sizes for the prime family of a type")
    p.add_argument("--type", required=True, help='e.g. "2,1,1"')
    p.add_argument("--primes", type=int, nargs="+", required=True)
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("orbits", help="orbit partition of the pair rectangle")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.add_argument("--prime", type=int, help="local partition at this prime")
    p.add_argument("--window", type=int, default=2,
                   help="entry window for integer orbits (default 2)")
    p.set_defaults(fn=_cmd_orbits)

    p = sub.add_parser("selfcheck", help="run the oracle cross-validation suites")
    p.add_argument("--scale", choices=("quick", "full"), default="quick")
    p.set_defaults(fn=_cmd_selfcheck)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NilgenusError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
