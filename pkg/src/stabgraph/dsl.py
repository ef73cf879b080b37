"""Line-oriented circuit language for graph-state experiments.

Example (the four-qubit cluster state measured with ``I Z Z Z``)::

    qubits 4
    edge 1 2
    edge 2 3
    edge 3 4
    edge 4 1
    measure I Z Z Z outcome +1

Grammar, one statement per line, ``#`` starts a comment, node indices are
1-based::

    qubits N                      first statement, exactly once
    edge J K                      declarations: must precede instructions
    hollow J [K ...]
    loop J [K ...]
    sign J [K ...]
    H J | S J | Z J               local gate
    measure P1 ... PN [outcome +1|-1]

A ``measure`` line lists one of ``I X Y Z`` per qubit.  ``outcome`` forces
the result; without it the outcome comes from the run's policy.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .clifford import _word
from .errors import ImpossibleOutcome, OutcomesExhausted, ProgramSemanticError, ProgramSyntaxError
from .graph import StabilizerGraph
from .measurement import MeasurementRecord, OutcomePolicy, measure_pauli
from .pauli import PauliProduct

__all__ = ["CircuitProgram", "Gate", "Measure", "RunResult", "format_program", "parse_program", "run_program"]

_TOKEN = re.compile(r"\S+")
_DECLS = ("edge", "hollow", "loop", "sign")


@dataclass(frozen=True)
class Gate:
    letter: str
    node: int  # 0-based
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Measure:
    product: PauliProduct
    outcome: int | None = None  # +1, -1 or None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CircuitProgram:
    n: int
    edges: tuple[tuple[int, int], ...] = ()
    hollow: tuple[int, ...] = ()
    loops: tuple[int, ...] = ()
    signs: tuple[int, ...] = ()
    instructions: tuple[Gate | Measure, ...] = ()

    def initial_graph(self) -> StabilizerGraph:
        return StabilizerGraph(self.n, self.edges, self.hollow, self.loops, self.signs)


def _tokens(line: str) -> list[tuple[str, int]]:
    code = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(code)]


def parse_program(text: str) -> CircuitProgram:
    """Parse program text.

    Raises
    ------
    ProgramSyntaxError
        Unknown statement or malformed tokens.
    ProgramSemanticError
        Out-of-range node, duplicate declaration, or a declaration after an
        instruction.
    """
    n = None
    edges: list[tuple[int, int]] = []
    decos: dict[str, list[int]] = {"hollow": [], "loop": [], "sign": []}
    instructions: list[Gate | Measure] = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        head, col = toks[0]
        args = toks[1:]

        def syntax(msg, c=col):
            return ProgramSyntaxError(lineno, c, msg)

        def semantic(msg, c=col):
            return ProgramSemanticError(lineno, c, msg)

        def node(tok):
            word, c = tok
            if not word.isdigit():
                raise syntax(f"expected a node number, got {word!r}", c)
            j = int(word)
            if not 1 <= j <= n:
                raise semantic(f"node {j} out of range 1..{n}", c)
            return j - 1

        if head == "qubits":
            if n is not None:
                raise semantic("duplicate 'qubits' declaration")
            if len(args) != 1 or not args[0][0].isdigit() or int(args[0][0]) < 1:
                raise syntax("'qubits' takes one positive integer", args[0][1] if args else col)
            n = int(args[0][0])
            continue
        if n is None:
            raise syntax(f"expected 'qubits' before {head!r}")

        if head in _DECLS:
            if instructions:
                raise semantic(f"declaration {head!r} after an instruction")
            if head == "edge":
                if len(args) != 2:
                    raise syntax("'edge' takes two node numbers")
                j, k = node(args[0]), node(args[1])
                if j == k:
                    raise semantic("an edge needs two distinct nodes; use 'loop'", args[1][1])
                if (j, k) in edges or (k, j) in edges:
                    raise semantic(f"duplicate edge {j + 1} {k + 1}")
                edges.append((j, k))
            else:
                if not args:
                    raise syntax(f"{head!r} takes at least one node number")
                for tok in args:
                    j = node(tok)
                    if j in decos[head]:
                        raise semantic(f"duplicate {head} on node {j + 1}", tok[1])
                    decos[head].append(j)
        elif head in ("H", "S", "Z"):
            if len(args) != 1:
                raise syntax(f"gate {head} takes one node number")
            instructions.append(Gate(head, node(args[0]), lineno))
        elif head == "measure":
            outcome = None
            if len(args) >= 2 and args[-2][0] == "outcome":
                word, c = args[-1]
                if word not in ("+1", "-1"):
                    raise syntax(f"outcome must be +1 or -1, got {word!r}", c)
                outcome = int(word)
                args = args[:-2]
            for word, c in args:
                if word not in ("I", "X", "Y", "Z"):
                    raise syntax(f"expected a Pauli letter I, X, Y or Z, got {word!r}", c)
            if len(args) != n:
                raise semantic(f"measure lists {len(args)} letters for {n} qubits")
            product = PauliProduct("".join(w for w, _ in args))
            if product.is_trivial:
                raise semantic("cannot measure the identity")
            instructions.append(Measure(product, outcome, lineno))
        else:
            raise syntax(f"unknown statement {head!r}")

    if n is None:
        raise ProgramSyntaxError(1, 1, "missing 'qubits' declaration")
    return CircuitProgram(
        n,
        tuple(edges),
        tuple(decos["hollow"]),
        tuple(decos["loop"]),
        tuple(decos["sign"]),
        tuple(instructions),
    )


def format_program(program: CircuitProgram) -> str:
    """Canonical text for ``program``; ``parse_program`` inverts it."""
    lines = [f"qubits {program.n}"]
    lines += [f"edge {j + 1} {k + 1}" for j, k in program.edges]
    for keyword, nodes in (("hollow", program.hollow), ("loop", program.loops), ("sign", program.signs)):
        if nodes:
            lines.append(keyword + " " + " ".join(str(j + 1) for j in nodes))
    for ins in program.instructions:
        if isinstance(ins, Gate):
            lines.append(f"{ins.letter} {ins.node + 1}")
        else:
            text = "measure " + " ".join(ins.product.letters)
            if ins.outcome is not None:
                text += f" outcome {ins.outcome:+d}"
            lines.append(text)
    return "\n".join(lines) + "\n"


@dataclass
class RunResult:
    initial: StabilizerGraph
    final: StabilizerGraph
    # (instruction, record) per instruction; record is None for gates
    steps: list[tuple[Gate | Measure, MeasurementRecord | None]]


def run_program(program: CircuitProgram, policy: OutcomePolicy) -> RunResult:
    """Execute ``program``; measurements without a forced outcome use ``policy``."""
    g = program.initial_graph()
    initial = g
    steps = []
    for ins in program.instructions:
        if isinstance(ins, Gate):
            g = g.copy()
            _word(g, ins.node, ins.letter)
            steps.append((ins, None))
        else:
            pol = policy if ins.outcome is None else OutcomePolicy.force(0 if ins.outcome == 1 else 1)
            try:
                rec = measure_pauli(g, ins.product, pol)
            except (ImpossibleOutcome, OutcomesExhausted) as exc:
                raise type(exc)(f"line {ins.line}: {exc}") from exc
            g = rec.post_graph
            steps.append((ins, rec))
    return RunResult(initial, g, steps)
