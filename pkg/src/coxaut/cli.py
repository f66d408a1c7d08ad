"""Command-line surface: parse, reduce, build, analyze, construct, verify.

Exit codes: 0 success, 1 invariant violation, 2 input error,
3 indeterminate (an enumeration guard tripped before an answer existed).
Guards can be set by flag or by the environment variables COXAUT_MAX_STATES,
COXAUT_MAX_VERTICES, and COXAUT_MAX_NODES; flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .automorphisms import (
    identity_stabilizer_census,
    local_permutation_field,
    psi_n,
    psi_phi,
    verify_ball_automorphism,
)
from .ball import build_ball
from .checks import default_probe_radius, run_system_checks
from .cycles import enumerate_embedded_cycles, is_essential, is_relator_shape
from .system import CoxeterSystem, ParseError, is_flexible, parse_system
from .words import LimitExceeded, format_word, m_class, parse_word, reduce_word

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_INDETERMINATE = 3


def _emit_json(obj: dict) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _load_system(path: str) -> CoxeterSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


def _guard(flag_value: int | None, env_name: str, default: int) -> int:
    if flag_value is not None:
        value = flag_value
    else:
        env = os.environ.get(env_name)
        value = int(env) if env else default
    if value <= 0:
        raise ParseError(f"guard {env_name} must be positive, got {value}")
    return value


def _guards(args) -> tuple[int, int, int]:
    return (
        _guard(args.max_states, "COXAUT_MAX_STATES", 10**6),
        _guard(args.max_vertices, "COXAUT_MAX_VERTICES", 10**6),
        _guard(args.max_nodes, "COXAUT_MAX_NODES", 10**6),
    )


def cmd_check_flexible(args) -> int:
    system = _load_system(args.file)
    witness = is_flexible(system)
    if args.format == "json":
        _emit_json(
            {
                "system": system.to_json_dict(),
                "flexible": witness is not None,
                "pivot": system.name_of(witness.pivot) if witness else None,
                "phi": witness.phi.cycle_notation(system.names) if witness else None,
            }
        )
    elif witness is not None:
        print(f"FLEXIBLE pivot={system.name_of(witness.pivot)} phi={witness.phi.cycle_notation(system.names)}")
    else:
        print("NOT FLEXIBLE")
    return EXIT_OK


def cmd_reduce(args) -> int:
    system = _load_system(args.file)
    max_states, _, _ = _guards(args)
    word = parse_word(system, args.word)
    canonical = reduce_word(system, word, max_states=max_states)
    size = len(m_class(system, canonical, max_states=max_states))
    if args.format == "json":
        _emit_json(
            {
                "input": args.word,
                "canonical": format_word(system, canonical),
                "length": len(canonical),
                "m_class_size": size,
            }
        )
    else:
        print(f"canonical: {format_word(system, canonical)}")
        print(f"length: {len(canonical)}")
        print(f"m-class size: {size}")
    return EXIT_OK


def cmd_ball(args) -> int:
    system = _load_system(args.file)
    max_states, max_vertices, _ = _guards(args)
    ball = build_ball(system, args.radius, max_vertices=max_vertices, max_states=max_states)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(ball.to_dot())
    if args.format == "json":
        _emit_json(ball.to_json_dict())
    else:
        print(f"radius: {ball.radius}")
        print(f"vertices: {ball.size}")
        print(f"edges: {len(ball.edges)}")
        print(f"complete: {'yes' if ball.complete else 'no'}")
    return EXIT_OK


def cmd_cycles(args) -> int:
    system = _load_system(args.file)
    max_states, max_vertices, _ = _guards(args)
    ball = build_ball(system, args.radius, max_vertices=max_vertices, max_states=max_states)
    max_m = system.max_finite_order()
    max_length = args.max_length if args.max_length is not None else (2 * max_m if max_m else 6)
    rows = []
    for cycle in enumerate_embedded_cycles(ball, max_length):
        report = is_essential(ball, cycle)
        relator = None
        if is_relator_shape(system, cycle):
            a, b = sorted(cycle.labels[:2])
            relator = [system.name_of(a), system.name_of(b)]
        rows.append(
            {
                "vertices": list(cycle.vertices),
                "labels": [system.name_of(x) for x in cycle.labels],
                "essential": report.essential,
                "certified": report.certified,
                "relator": relator,
            }
        )
    if args.format == "json":
        _emit_json({"radius": args.radius, "max_length": max_length, "cycles": rows})
    else:
        print(f"{len(rows)} embedded cycles of length <= {max_length} at radius {args.radius}")
        for row in rows:
            flags = [
                "essential" if row["essential"] else "not-essential",
                "certified" if row["certified"] else "uncertified",
            ]
            if row["relator"]:
                flags.append(f"relator({','.join(row['relator'])})")
            print(f"  {'-'.join(map(str, row['vertices']))} [{' '.join(row['labels'])}] {' '.join(flags)}")
    return EXIT_OK


def cmd_exotic(args) -> int:
    system = _load_system(args.file)
    max_states, max_vertices, _ = _guards(args)
    witness = is_flexible(system)
    if witness is None:
        print("error: the diagram is not flexible; no exotic map exists", file=sys.stderr)
        return EXIT_INPUT
    ball = build_ball(system, args.radius, max_vertices=max_vertices, max_states=max_states)
    aut = psi_phi(ball, witness) if args.n is None else psi_n(ball, witness, args.n)
    report = verify_ball_automorphism(ball, aut)
    field = local_permutation_field(ball, aut)
    payload = {
        "pivot": system.name_of(witness.pivot),
        "phi": witness.phi.cycle_notation(system.names),
        "n": args.n,
        "verified": report.ok,
        "violations": list(report.violations),
        "map": [
            [format_word(system, ball.words[v]), format_word(system, ball.words[aut.vmap[v]])]
            for v in range(ball.size)
            if aut.vmap[v] is not None
        ],
        "field": {
            "stars": len(field.perms),
            "constant": field.is_constant,
            "distinct_permutations": len(set(field.perms)),
        },
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        name = "psi" if args.n is None else f"psi_{args.n}"
        print(f"{name} pivot={payload['pivot']} phi={payload['phi']}")
        print(f"verified: {'yes' if report.ok else 'no'}")
        print(f"field: {'constant' if field.is_constant else 'non-constant'} over {len(field.perms)} stars")
        for pair in payload["map"]:
            print(f"  {pair[0]} -> {pair[1]}")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_stabilizer(args) -> int:
    system = _load_system(args.file)
    max_states, max_vertices, max_nodes = _guards(args)
    probe = args.probe if args.probe is not None else default_probe_radius(system, args.radius)
    ball = build_ball(system, args.radius, max_vertices=max_vertices, max_states=max_states)
    census = identity_stabilizer_census(ball, probe, max_nodes=max_nodes)
    entries = [
        {
            "images": list(entry.images),
            "map": [
                [format_word(system, ball.words[v]), format_word(system, ball.words[entry.images[v]])]
                for v in range(census.probe_count)
            ],
            "verdict": entry.verdict,
            "diagram": entry.diagram.cycle_notation(system.names) if entry.diagram else None,
        }
        for entry in census.entries
    ]
    if args.format == "json":
        _emit_json(
            {
                "radius": census.radius,
                "probe_radius": census.probe_radius,
                "count": census.count,
                "diagram_count": census.diagram_count,
                "exotic_count": census.exotic_count,
                "search_nodes": census.search_nodes,
                "entries": entries,
            }
        )
    else:
        print(
            f"{census.count} identity-fixing classes at radius {census.radius}, probe {census.probe_radius} "
            f"({census.diagram_count} diagram, {census.exotic_count} exotic)"
        )
        for entry in entries:
            tag = entry["diagram"] if entry["diagram"] else "exotic"
            moved = [f"{a}->{b}" for a, b in entry["map"] if a != b]
            print(f"  [{tag}] {' '.join(moved) if moved else 'identity'}")
    return EXIT_OK


def cmd_verify(args) -> int:
    system = _load_system(args.file)
    max_states, max_vertices, max_nodes = _guards(args)
    report = run_system_checks(
        system,
        radius=args.radius,
        probe_radius=args.probe,
        max_vertices=max_vertices,
        max_nodes=max_nodes,
        max_states=max_states,
    )
    if args.format == "json":
        _emit_json(report.to_json_dict())
    else:
        for check in report.checks:
            print(f"[{check.status.upper():>13}] {check.name}: {check.detail}")
        print(f"verdict: {report.verdict}")
    if report.failures:
        return EXIT_VIOLATION
    if report.indeterminate:
        return EXIT_INDETERMINATE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxaut",
        description="Coxeter systems: word problem, Cayley-graph balls, and their automorphisms.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="diagram file (gens/pair format)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-states", type=int, default=None, help="m-operation closure guard")
    common.add_argument("--max-vertices", type=int, default=None, help="ball size guard")
    common.add_argument("--max-nodes", type=int, default=None, help="stabilizer search guard")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-flexible", parents=[common], help="decide diagram flexibility")
    p.set_defaults(handler=cmd_check_flexible)

    p = sub.add_parser("reduce", parents=[common], help="canonical form of a word")
    p.add_argument("word", help="whitespace-separated generator names; 'e' for the empty word")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("ball", parents=[common], help="build a Cayley-graph ball")
    p.add_argument("--radius", type=int, default=5)
    p.add_argument("--dot", metavar="PATH", help="also write a Graphviz rendering")
    p.set_defaults(handler=cmd_ball)

    p = sub.add_parser("cycles", parents=[common], help="classify embedded cycles")
    p.add_argument("--radius", type=int, default=5)
    p.add_argument("--max-length", type=int, default=None)
    p.set_defaults(handler=cmd_cycles)

    p = sub.add_parser("exotic", parents=[common], help="construct the exotic automorphism")
    p.add_argument("--radius", type=int, default=5)
    p.add_argument("--n", type=int, default=None, help="family index; omit for the basic map")
    p.set_defaults(handler=cmd_exotic)

    p = sub.add_parser("stabilizer", parents=[common], help="census of identity-fixing automorphisms")
    p.add_argument("--radius", type=int, default=5)
    p.add_argument("--probe", type=int, default=None, help="dedupe radius; default radius - max finite order")
    p.set_defaults(handler=cmd_stabilizer)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite for a system")
    p.add_argument("--radius", type=int, default=5)
    p.add_argument("--probe", type=int, default=None)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "radius", 0) < 0:
        print("error: radius must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "n", None) is not None and args.n < 1:
        print("error: --n must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.handler(args)
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LimitExceeded as exc:
        print(f"INDETERMINATE: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE


if __name__ == "__main__":
    sys.exit(main())
