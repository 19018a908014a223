"""Line-oriented text format for machines.

One shared format covers transducers (deterministic and not), NFAs,
DFAs, and LBAs, discriminated by a ``kind`` directive, so converted
machines can be piped through files.  Serialization is canonical:
directives in a fixed order, states, symbols and transitions in
declaration order, one transition per line, LF endings.  Comments start
with ``%`` (``#`` is a live alphabet symbol in the block language).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .convert import Dfa, Nfa
from .core import MachineError, MalformedInputError, Transducer
from .lba import Lba

KINDS = ("niufst", "iufst", "nfa", "dfa", "lba")

RESERVED = ("->", "%")


class MachineParseError(MachineError):
    """Parse failure; carries a 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class MachineFile:
    kind: str
    machine: Transducer | Nfa | Dfa | Lba

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise MachineError(f"unknown machine kind {self.kind!r}")
        if self.kind == "iufst" and not self.machine.is_deterministic:
            raise MachineError("iufst files must be deterministic")
        if self.kind in ("niufst", "iufst") and not isinstance(self.machine, Transducer):
            raise MachineError(f"kind {self.kind} requires a transducer")
        if self.kind == "nfa" and not isinstance(self.machine, Nfa):
            raise MachineError("kind nfa requires an NFA")
        if self.kind == "dfa" and not isinstance(self.machine, Dfa):
            raise MachineError("kind dfa requires a DFA")
        if self.kind == "lba" and not isinstance(self.machine, Lba):
            raise MachineError("kind lba requires an LBA")


def _tokenize(text: str) -> list[tuple[int, list[str]]]:
    rows = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0]
        toks = line.split()
        if toks:
            rows.append((i, toks))
    return rows


class _Parser:
    def __init__(self, text: str):
        self.rows = _tokenize(text)
        self.pos = 0

    def error(self, msg: str, line: int | None = None) -> MachineParseError:
        if line is None:
            line = self.rows[self.pos - 1][0] if self.pos else 0
        return MachineParseError(msg, line)

    def next_row(self) -> tuple[int, list[str]]:
        if self.pos >= len(self.rows):
            raise MachineParseError("unexpected end of file", self.rows[-1][0] if self.rows else 0)
        row = self.rows[self.pos]
        self.pos += 1
        return row

    def peek_directive(self) -> str | None:
        if self.pos >= len(self.rows):
            return None
        return self.rows[self.pos][1][0]

    def take(self, directive: str, required: bool = True) -> list[str] | None:
        if self.peek_directive() != directive:
            if required:
                line = self.rows[self.pos][0] if self.pos < len(self.rows) else 0
                got = self.peek_directive()
                raise MachineParseError(
                    f"expected directive {directive!r}, got {got!r}", line
                )
            return None
        _line, toks = self.next_row()
        return toks[1:]


def parse_machine(text: str) -> MachineFile:
    """Parse the text format, validating every machine invariant.

    Distinct diagnostics (each with a line number): unknown directive,
    undeclared state or symbol, an endmarker that is also an input
    symbol, duplicate DFA transitions, and malformed LBA actions.
    """
    p = _Parser(text)
    kind_ops = p.take("kind")
    if len(kind_ops) != 1 or kind_ops[0] not in KINDS:
        raise p.error(f"kind must be one of {', '.join(KINDS)}")
    kind = kind_ops[0]

    states = p.take("states")
    if not states:
        raise p.error("at least one state is required")
    state_set = set(states)
    if len(state_set) != len(states):
        raise p.error("duplicate state declared")
    inputs = p.take("input") or []
    input_set = set(inputs)

    def check_tokens(toks: list[str]) -> None:
        for tok in toks:
            if tok in RESERVED:
                raise p.error(f"{tok!r} is a reserved token")

    check_tokens(states)
    check_tokens(inputs)

    try:
        if kind in ("niufst", "iufst"):
            return _parse_transducer(p, kind, states, inputs, state_set, input_set)
        if kind in ("nfa", "dfa"):
            return _parse_fa(p, kind, states, inputs, state_set, input_set)
        return _parse_lba(p, states, inputs, state_set, input_set)
    except MachineParseError:
        raise
    except MachineError as exc:
        raise MachineParseError(str(exc), 0) from exc


def _parse_transducer(p, kind, states, inputs, state_set, input_set) -> MachineFile:
    outputs = p.take("output")
    if not outputs:
        raise p.error("transducers need a non-empty output alphabet")
    output_set = set(outputs)
    (endmarker,) = _exactly(p, p.take("endmarker"), 1, "endmarker")
    if endmarker in input_set:
        raise p.error("endmarker must not be an input symbol")
    if endmarker not in output_set:
        raise p.error("endmarker must be a declared output symbol")
    (initial,) = _exactly(p, p.take("initial"), 1, "initial")
    if initial not in state_set:
        raise p.error(f"undeclared initial state {initial!r}")
    accepting = p.take("accept")
    for q in accepting:
        if q not in state_set:
            raise p.error(f"undeclared accepting state {q!r}")
    bound: int | str | None = None
    sweeps = p.take("sweeps", required=False)
    if sweeps is not None:
        (tok,) = _exactly(p, sweeps, 1, "sweeps")
        if tok in ("unbounded", "log", "linear"):
            bound = tok
        elif tok.isdigit() and int(tok) >= 1:
            bound = int(tok)
        else:
            raise p.error(f"sweeps must be a positive integer or unbounded/log/linear, got {tok!r}")
    transitions: dict[tuple[str, str], tuple[tuple[str, str], ...]] = {}
    sym_set = input_set | output_set
    while p.peek_directive() is not None:
        line, toks = p.next_row()
        if toks[0] != "trans":
            raise MachineParseError(f"unknown directive {toks[0]!r}", line)
        if len(toks) != 6 or toks[3] != "->":
            raise MachineParseError("transducer transitions read: trans s a -> t y", line)
        _, q, x, _, r, y = toks
        if q not in state_set or r not in state_set:
            raise MachineParseError(f"undeclared state in transition {q!r} / {r!r}", line)
        if x not in sym_set:
            raise MachineParseError(f"undeclared symbol {x!r}", line)
        if y not in output_set:
            raise MachineParseError(f"output symbol {y!r} not in the output alphabet", line)
        transitions[(q, x)] = transitions.get((q, x), ()) + ((r, y),)
    t = Transducer(
        states=tuple(states),
        input_alphabet=tuple(inputs),
        output_alphabet=tuple(outputs),
        endmarker=endmarker,
        initial=initial,
        accepting=tuple(accepting),
        transitions=transitions,
        sweep_bound=bound,
    )
    if kind == "iufst" and not t.is_deterministic:
        raise p.error("iufst machines must have at most one choice per (state, symbol)")
    return MachineFile(kind, t)


def _parse_fa(p, kind, states, inputs, state_set, input_set) -> MachineFile:
    (initial,) = _exactly(p, p.take("initial"), 1, "initial")
    if initial not in state_set:
        raise p.error(f"undeclared initial state {initial!r}")
    accepting = p.take("accept")
    for q in accepting:
        if q not in state_set:
            raise p.error(f"undeclared accepting state {q!r}")
    nfa_trans: dict[tuple[str, str], tuple[str, ...]] = {}
    while p.peek_directive() is not None:
        line, toks = p.next_row()
        if toks[0] != "trans":
            raise MachineParseError(f"unknown directive {toks[0]!r}", line)
        if len(toks) != 5 or toks[3] != "->":
            raise MachineParseError("finite-automaton transitions read: trans s a -> t", line)
        _, q, x, _, r = toks
        if q not in state_set or r not in state_set:
            raise MachineParseError(f"undeclared state in transition {q!r} / {r!r}", line)
        if x not in input_set:
            raise MachineParseError(f"undeclared symbol {x!r}", line)
        if kind == "dfa" and (q, x) in nfa_trans:
            raise MachineParseError(f"duplicate dfa transition for ({q!r}, {x!r})", line)
        if r in nfa_trans.get((q, x), ()):
            raise MachineParseError(f"duplicate transition ({q!r}, {x!r}) -> {r!r}", line)
        nfa_trans[(q, x)] = nfa_trans.get((q, x), ()) + (r,)
    if kind == "dfa":
        dfa = Dfa(
            states=tuple(states),
            alphabet=tuple(inputs),
            initial=initial,
            accepting=tuple(accepting),
            transitions={k: v[0] for k, v in nfa_trans.items()},
        )
        return MachineFile(kind, dfa)
    nfa = Nfa(
        states=tuple(states),
        alphabet=tuple(inputs),
        initial=initial,
        accepting=tuple(accepting),
        transitions=nfa_trans,
    )
    return MachineFile(kind, nfa)


def _parse_lba(p, states, inputs, state_set, input_set) -> MachineFile:
    tape = p.take("tape")
    tape_set = set(tape)
    (lend,) = _exactly(p, p.take("lend"), 1, "lend")
    (rend,) = _exactly(p, p.take("rend"), 1, "rend")
    (initial,) = _exactly(p, p.take("initial"), 1, "initial")
    if initial not in state_set:
        raise p.error(f"undeclared initial state {initial!r}")
    accepting = p.take("accept")
    for q in accepting:
        if q not in state_set:
            raise p.error(f"undeclared accepting state {q!r}")
    transitions: dict[tuple[str, str], tuple[tuple[str, str], ...]] = {}
    while p.peek_directive() is not None:
        line, toks = p.next_row()
        if toks[0] != "trans":
            raise MachineParseError(f"unknown directive {toks[0]!r}", line)
        if len(toks) != 6 or toks[3] != "->":
            raise MachineParseError("lba transitions read: trans s a -> t (y|L|R)", line)
        _, q, x, _, r, act = toks
        if q not in state_set or r not in state_set:
            raise MachineParseError(f"undeclared state in transition {q!r} / {r!r}", line)
        if x not in tape_set:
            raise MachineParseError(f"undeclared tape symbol {x!r}", line)
        if act not in ("L", "R") and act not in tape_set:
            raise MachineParseError(
                f"lba action must be a tape symbol, L, or R, got {act!r}", line
            )
        entry = (r, act)
        if entry in transitions.get((q, x), ()):
            raise MachineParseError(f"duplicate lba transition for ({q!r}, {x!r})", line)
        transitions[(q, x)] = transitions.get((q, x), ()) + (entry,)
    lba = Lba(
        states=tuple(states),
        input_alphabet=tuple(inputs),
        tape_alphabet=tuple(tape),
        left_end=lend,
        right_end=rend,
        initial=initial,
        accepting=tuple(accepting),
        transitions=transitions,
    )
    return MachineFile("lba", lba)


def _exactly(p, toks, n, what):
    if toks is None or len(toks) != n:
        raise p.error(f"directive {what!r} takes exactly {n} operand(s)")
    return toks


def serialize_machine(mf: MachineFile) -> str:
    """Canonical text form; ``parse_machine`` inverts it structurally."""
    m = mf.machine
    lines = [f"kind {mf.kind}"]
    lines.append("states " + " ".join(m.states))
    if isinstance(m, Transducer):
        lines.append("input " + " ".join(m.input_alphabet))
        lines.append("output " + " ".join(m.output_alphabet))
        lines.append(f"endmarker {m.endmarker}")
        lines.append(f"initial {m.initial}")
        lines.append(("accept " + " ".join(m.accepting)).rstrip())
        if m.sweep_bound is not None:
            lines.append(f"sweeps {m.sweep_bound}")
        for (q, x), choices in m.transitions.items():
            for r, y in choices:
                lines.append(f"trans {q} {x} -> {r} {y}")
    elif isinstance(m, (Nfa, Dfa)):
        lines.append("input " + " ".join(m.alphabet))
        lines.append(f"initial {m.initial}")
        lines.append(("accept " + " ".join(m.accepting)).rstrip())
        if isinstance(m, Dfa):
            for (q, x), r in m.transitions.items():
                lines.append(f"trans {q} {x} -> {r}")
        else:
            for (q, x), rs in m.transitions.items():
                for r in rs:
                    lines.append(f"trans {q} {x} -> {r}")
    elif isinstance(m, Lba):
        lines.append("input " + " ".join(m.input_alphabet))
        lines.append("tape " + " ".join(m.tape_alphabet))
        lines.append(f"lend {m.left_end}")
        lines.append(f"rend {m.right_end}")
        lines.append(f"initial {m.initial}")
        lines.append(("accept " + " ".join(m.accepting)).rstrip())
        for (q, x), acts in m.transitions.items():
            for r, act in acts:
                lines.append(f"trans {q} {x} -> {r} {act}")
    else:  # pragma: no cover - MachineFile already constrains this
        raise MachineError(f"cannot serialize {type(m).__name__}")
    return "\n".join(lines) + "\n"


def parse_word(text: str, alphabet: Sequence[str]) -> tuple[str, ...]:
    """Read a word from CLI text.

    Symbols are comma-separated; when every alphabet symbol is a single
    character an unseparated string is also accepted.  The empty string
    is the empty word.
    """
    if text == "":
        return ()
    alpha = set(alphabet)
    if "," in text:
        syms = [s for s in text.split(",") if s != ""]
    elif all(len(a) == 1 for a in alphabet):
        syms = list(text)
    else:
        syms = [text]
    bad = [s for s in syms if s not in alpha]
    if bad:
        raise MalformedInputError(f"symbols {bad!r} not in the alphabet {sorted(alpha)!r}")
    return tuple(syms)


def format_word(word: Sequence[str]) -> str:
    return ",".join(word)
