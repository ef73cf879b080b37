"""Command-line entry point: ``stabgraph run|verify|bench|export-dot``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 impossible forced outcome.  Errors are one JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import verify as V
from .dsl import Gate, parse_program, run_program
from .errors import ImpossibleOutcome, OutcomesExhausted, ProgramError, SchemaError
from .measurement import OutcomePolicy, measure_single
from .oracle import MAX_QUBITS
from .serialize import export_dot, graph_from_json, graph_to_dict, graph_to_json

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IMPOSSIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(kind: str, message: str, code: int, **extra) -> int:
    print(json.dumps({"error": kind, "message": message, **extra}), file=sys.stderr)
    return code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _outcome_policy(text: str, seed: int) -> OutcomePolicy:
    if text == "random":
        return OutcomePolicy.sample(seed)
    out = []
    for word in text.split(","):
        word = word.strip()
        if word not in ("+1", "-1", "1"):
            raise UsageError(f"--outcomes expects 'random' or a comma list of +1/-1, got {word!r}")
        out.append(1 if word == "-1" else 0)
    return OutcomePolicy.sequence(out)


def _record_dict(ins, rec) -> dict:
    return {
        "line": ins.line,
        "pauli": ins.product.letters,
        "outcome": rec.outcome,
        "deterministic": rec.deterministic,
        "probability": rec.probability,
        "chosen_node": None if rec.chosen_node is None else rec.chosen_node + 1,
        "basis_change": [[j + 1, w] for j, w in rec.basis_words],
    }


def cmd_run(args) -> int:
    program = parse_program(_read(args.program))
    policy = _outcome_policy(args.outcomes, args.seed)
    result = run_program(program, policy)
    if args.emit == "dot":
        sys.stdout.write(export_dot(result.final))
    elif args.emit == "json":
        doc = {
            "qubits": program.n,
            "initial_graph": graph_to_dict(result.initial),
            "measurements": [_record_dict(i, r) for i, r in result.steps if r is not None],
            "final_graph": graph_to_dict(result.final),
        }
        print(json.dumps(doc))
    else:
        print(f"initial {graph_to_json(result.initial)}")
        for ins, rec in result.steps:
            if isinstance(ins, Gate):
                print(f"gate {ins.letter} {ins.node + 1}")
                continue
            d = _record_dict(ins, rec)
            kind = "certain" if rec.deterministic else f"random chosen={d['chosen_node']}"
            basis = " ".join(f"{w}@{j}" for j, w in d["basis_change"]) or "-"
            print(f"measure {d['pauli']} -> {rec.outcome:+d} {kind} basis={basis}")
        print(f"final {graph_to_json(result.final)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    exhaustive_max = min(args.max_qubits, args.exhaustive_max)
    sweeps = []
    for n in range(1, exhaustive_max + 1):
        sweeps.append(lambda n=n: V.exhaustive_rule_sweep(n, stop_early=True))
        sweeps.append(lambda n=n: V.exhaustive_measurement_sweep(n, stop_early=True))
    sweeps.append(lambda: V.random_rule_sweep(args.cases, args.max_qubits, args.seed, stop_early=True))
    sweeps.append(lambda: V.random_measurement_sweep(args.cases, args.max_qubits, args.seed + 1, stop_early=True))
    for run in sweeps:
        res = run()
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} {res.name}: {res.cases} cases in {res.seconds:.2f}s")
        if not res.ok:
            print(json.dumps(res.first.to_dict()))
            return EXIT_VERIFY
    return EXIT_OK


def cmd_bench(args) -> int:
    rng = np.random.default_rng(args.seed)
    g = V.random_sparse_graph(args.nodes, args.mean_degree, rng)
    policy = OutcomePolicy.sample(rng)
    nodes = rng.integers(0, args.nodes, size=args.measurements).tolist()
    letters = [args.letters[int(i)] for i in rng.integers(0, len(args.letters), size=args.measurements)]
    t0 = time.perf_counter()
    for j, letter in zip(nodes, letters):
        g = measure_single(g, j, letter, policy).post_graph
    dt = time.perf_counter() - t0
    print(
        json.dumps(
            {
                "nodes": args.nodes,
                "measurements": args.measurements,
                "seconds": round(dt, 6),
                "measurements_per_second": round(args.measurements / dt) if dt > 0 else None,
            }
        )
    )
    return EXIT_OK


def cmd_export_dot(args) -> int:
    sys.stdout.write(export_dot(graph_from_json(_read(args.graph))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stabgraph", description="Stabilizer-state graph simulator.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="execute a circuit program")
    r.add_argument("program", help="program file, or - for stdin")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--outcomes", default="random", help="'random' or a comma list such as +1,-1")
    r.add_argument("--emit", choices=("json", "dot", "trace"), default="trace")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="run oracle sweeps")
    v.add_argument("--max-qubits", type=int, default=3)
    v.add_argument("--exhaustive-max", type=int, default=3, help="largest n swept exhaustively")
    v.add_argument("--cases", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time random single-qubit measurements")
    b.add_argument("--nodes", type=int, default=1000)
    b.add_argument("--measurements", type=int, default=10000)
    b.add_argument("--mean-degree", type=float, default=8.0)
    b.add_argument("--letters", default="Z", help="letters to draw from, e.g. XYZ")
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench)

    d = sub.add_parser("export-dot", help="print a JSON graph as DOT")
    d.add_argument("graph", help="graph JSON file, or - for stdin")
    d.set_defaults(func=cmd_export_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify" and not (1 <= args.max_qubits <= MAX_QUBITS and args.cases >= 0):
            raise UsageError(f"--max-qubits must be in 1..{MAX_QUBITS} and --cases >= 0")
        if args.command == "bench" and (args.nodes < 2 or args.measurements < 0 or not args.letters):
            raise UsageError("--nodes must be >= 2, --measurements >= 0, --letters non-empty")
        if args.command == "bench" and set(args.letters) - set("XYZ"):
            raise UsageError("--letters may only contain X, Y and Z")
        return args.func(args)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except ProgramError as exc:
        return _fail(type(exc).__name__, exc.message, EXIT_USAGE, line=exc.line, col=exc.col)
    except (SchemaError, OutcomesExhausted) as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_USAGE)
    except OSError as exc:
        return _fail("io", str(exc), EXIT_USAGE)
    except ImpossibleOutcome as exc:
        return _fail("ImpossibleOutcome", str(exc), EXIT_IMPOSSIBLE)


if __name__ == "__main__":
    sys.exit(main())
