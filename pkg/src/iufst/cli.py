"""Command-line front end.

Subcommands map one-to-one onto library operations and pipe machines
through the text format, so conversions compose via files.  Exit codes:
0 accept/true/success, 1 reject/false/disagreement, 2 usage or parse
error, 3 unknown (a cap or budget was exhausted before an answer).
"""

from __future__ import annotations

import argparse
import sys
from itertools import product
from typing import Optional, Sequence

from . import decide as decide_mod
from .convert import (
    Nfa,
    ResourceBudgetError,
    dfa_minimize,
    nfa_to_dfa,
    sweep_reduce,
    to_nfa,
)
from .core import DEFAULT_TAPE_CAP, MachineError, Transducer, find_accepting_trace, run
from .hierarchy import (
    Constructor,
    combine_add,
    combine_mul,
    expo_constructor,
    identity_constructor,
    measure_sweep_growth,
)
from .lba import Lba, compile_lba, run_lba
from .oracle import OracleBudgetError, compare_languages, compare_on_words
from .textio import MachineFile, parse_machine, parse_word, serialize_machine
from .witness import (
    bin_lsb,
    d_word,
    gen_block,
    gen_block_nfa,
    gen_copy,
    gen_d,
    gen_e,
    gen_uexpo,
    gen_unary,
    in_block,
    in_copy,
    in_d,
    in_e,
    in_uexpo,
    in_unary,
)

OK, REJECT, ERROR, UNKNOWN = 0, 1, 2, 3


class CliError(Exception):
    pass


def _load(path: str) -> MachineFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_machine(fh.read())


def _save(mf: MachineFile, path: Optional[str]) -> None:
    text = serialize_machine(mf)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _need_transducer(mf: MachineFile) -> Transducer:
    if not isinstance(mf.machine, Transducer):
        raise CliError(f"expected a transducer machine file, got kind {mf.kind}")
    return mf.machine


def _need_bound(t: Transducer) -> int:
    if not isinstance(t.sweep_bound, int):
        raise CliError("this operation needs a declared constant sweep bound "
                       "(add a `sweeps K` directive)")
    return t.sweep_bound


def _split_spec(spec: str) -> tuple[str, list[int]]:
    if ":" in spec:
        name, _, raw = spec.partition(":")
        try:
            params = [int(p) for p in raw.split(",") if p != ""]
        except ValueError:
            raise CliError(f"bad family parameters in {spec!r}")
        return name, params
    return spec, []


def _gen_machine(spec: str) -> MachineFile:
    name, params = _split_spec(spec)
    if name == "block" and len(params) == 1:
        return MachineFile("niufst", gen_block(params[0]))
    if name == "block-nfa" and len(params) == 1:
        return MachineFile("nfa", gen_block_nfa(params[0]))
    if name == "unary" and len(params) == 2:
        return MachineFile("iufst", gen_unary(*params))
    if name == "e" and len(params) == 2:
        return MachineFile("niufst", gen_e(*params))
    if name == "copy" and not params:
        return MachineFile("iufst", gen_copy())
    if name == "uexpo" and not params:
        return MachineFile("iufst", gen_uexpo())
    if name == "d":
        # the machine covers every block width; an optional width is
        # accepted for symmetry with verify and ignored beyond checking
        if params and params[0] < 2:
            raise CliError("d needs k >= 2")
        return MachineFile("niufst", gen_d())
    if name == "id-ctor" and not params:
        return MachineFile("iufst", identity_constructor(("x",)).machine)
    if name == "expo-ctor" and not params:
        return MachineFile("iufst", expo_constructor(("x",)).machine)
    raise CliError(f"unknown generator spec {spec!r}")


def _family_tools(spec: str):
    """(machine-or-acceptor, predicate, alphabet, default budget) per family."""
    name, params = _split_spec(spec)
    if name == "block" and len(params) == 1:
        k = params[0]
        return gen_block(k), (lambda w: in_block(k, w)), ("0", "1", "#"), 2 * k + 3
    if name == "block-nfa" and len(params) == 1:
        k = params[0]
        return gen_block_nfa(k), (lambda w: in_block(k, w)), ("0", "1", "#"), 2 * k + 3
    if name == "unary" and len(params) == 2:
        n, k = params
        return gen_unary(n, k), (lambda w: in_unary(n, k, w)), ("a",), 2 * n**k + 2
    if name == "e" and len(params) == 2:
        n, k = params
        return gen_e(n, k), (lambda w: in_e(n, k, w)), ("a", "b"), min(10, 2 * n**k + 2)
    if name == "copy" and not params:
        return gen_copy(), in_copy, ("a", "b", "$"), 9
    if name == "uexpo" and not params:
        return gen_uexpo(), in_uexpo, ("a",), 64
    if name == "d":
        return gen_d(), in_d, ("a", "b", "0", "1"), 8
    raise CliError(f"unknown family spec {spec!r}")


def _d_corpus(k: int) -> list[tuple[str, ...]]:
    """Every width-k member plus one single-mutation negative each."""
    words = []
    payload_space = list(product(product("ab", repeat=k), repeat=2**k))
    for idx, pays in enumerate(payload_space):
        for i in range(1, 2**k):
            w = d_word(k, pays, i)
            words.append(w)
            bad = list(w)
            pos = len(bad) - k + (idx % k)
            bad[pos] = "a" if bad[pos] == "b" else "b"
            words.append(tuple(bad))
    return words


def _measure_family(spec: str):
    """(machine, param -> word, printable name) for sweep measurement."""
    name, params = _split_spec(spec)
    if name == "unary" and len(params) == 2:
        n, k = params
        return gen_unary(n, k), lambda c: ("a",) * (c * n**k)
    if name == "e" and len(params) == 2:
        n, k = params
        return gen_e(n, k), lambda c: ("b",) + ("a",) * (c * n**k - 1)
    if name == "block" and len(params) == 1:
        k = params[0]

        def block_word(m):
            block = ("0",) * k
            out: list[str] = []
            for _ in range(max(2, m)):
                out += list(block) + ["#"]
            return tuple(out[:-1])

        return gen_block(k), block_word
    if name == "copy" and not params:
        def copy_word(j):
            u = tuple("ab"[(i % 2)] for i in range(j))
            return u + ("$",) + u

        return gen_copy(), copy_word
    if name == "uexpo" and not params:
        return gen_uexpo(), lambda j: ("a",) * (2**j)
    if name == "d" and not params:
        def dw(k):
            pays = [tuple("ab"[(j + i) % 2] for i in range(k)) for j in range(2**k)]
            return d_word(k, pays, 1)

        return gen_d(), dw
    if name == "id-ctor" and not params:
        c = identity_constructor(("x",))
        return c.machine, lambda m: ("a",) * m + ("x",) * m
    if name == "expo-ctor" and not params:
        c = expo_constructor(("x",))
        return c.machine, lambda m: ("a",) * m + ("x",) * (2**m)
    raise CliError(f"no measurement family for {spec!r}")


def cmd_run(args) -> int:
    mf = _load(args.machine)
    t = _need_transducer(mf)
    word = parse_word(args.word, t.input_alphabet)
    max_sweeps = args.max_sweeps
    if max_sweeps is None:
        if isinstance(t.sweep_bound, int):
            max_sweeps = t.sweep_bound
        else:
            max_sweeps = 4 * len(word) + 16
    report = run(t, word, max_sweeps, args.tape_cap)
    if report.accepted:
        print(f"accepted sweeps={report.min_accept_sweeps}")
        if args.trace:
            trace = find_accepting_trace(t, word, max_sweeps, args.tape_cap)
            for tape in trace or []:
                print(" ".join(tape))
        return OK
    definite = report.exhausted or (
        isinstance(t.sweep_bound, int) and max_sweeps >= t.sweep_bound
        and not report.cap_hit
    )
    if definite:
        print("rejected")
        return REJECT
    print(f"unknown (explored {report.tapes_explored} tapes, "
          f"{max_sweeps} sweeps, cap_hit={report.cap_hit})")
    return UNKNOWN


def cmd_convert(args) -> int:
    mf = _load(args.machine)
    target = args.to
    if target.startswith("reduce:"):
        t = _need_transducer(mf)
        k = _need_bound(t)
        lanes = int(target.split(":", 1)[1])
        out = sweep_reduce(t, k, lanes)
        kind = "iufst" if out.is_deterministic else "niufst"
        _save(MachineFile(kind, out), args.output)
        return OK
    if target == "nfa":
        t = _need_transducer(mf)
        out = to_nfa(t, _need_bound(t))
        _save(MachineFile("nfa", out), args.output)
        return OK
    if target in ("dfa", "min-dfa"):
        if isinstance(mf.machine, Nfa):
            nfa = mf.machine
        else:
            t = _need_transducer(mf)
            nfa = to_nfa(t, _need_bound(t))
        dfa = nfa_to_dfa(nfa, state_cap=args.state_cap)
        if target == "min-dfa":
            dfa = dfa_minimize(dfa)
        _save(MachineFile("dfa", dfa), args.output)
        return OK
    raise CliError(f"unknown conversion target {target!r}")


def cmd_decide(args) -> int:
    mf = _load(args.machine)
    t = _need_transducer(mf)
    k = _need_bound(t)
    if args.question in ("equiv", "subset"):
        if not args.other:
            raise CliError(f"decide {args.question} needs -n OTHER_MACHINE")
        mf2 = _load(args.other)
        t2 = _need_transducer(mf2)
        k2 = _need_bound(t2)
        if args.question == "equiv":
            witness = decide_mod.equivalence_witness(t, k, t2, k2, args.state_cap)
        else:
            witness = decide_mod.inclusion_witness(t, k, t2, k2, args.state_cap)
        if witness is None:
            print("true")
            return OK
        print(f"false witness={','.join(witness) if witness else 'λ'}")
        return REJECT
    if args.question == "empty":
        witness = decide_mod.emptiness_witness(t, k)
        if witness is None:
            print("true")
            return OK
        print(f"false witness={','.join(witness) if witness else 'λ'}")
        return REJECT
    if args.question == "finite":
        pumped = decide_mod.infiniteness_witness(t, k)
        if pumped is None:
            print("true")
            return OK
        pre, cyc, suf = pumped
        print(f"false pump=({','.join(pre)};{','.join(cyc)};{','.join(suf)})")
        return REJECT
    if args.question == "universal":
        witness = decide_mod.universality_witness(t, k, args.state_cap)
        if witness is None:
            print("true")
            return OK
        print(f"false witness={','.join(witness) if witness else 'λ'}")
        return REJECT
    raise CliError(f"unknown decision question {args.question!r}")


def cmd_gen(args) -> int:
    _save(_gen_machine(args.family), args.output)
    return OK


def cmd_combine(args) -> int:
    ctors = {"id": identity_constructor, "expo": expo_constructor}
    if args.left not in ctors or args.right not in ctors:
        raise CliError("combine operands must be id or expo")
    left = ctors[args.left](("x",))
    right = ctors[args.right](("y",))
    out = combine_add(left, right) if args.op == "add" else combine_mul(left, right)
    _save(MachineFile("iufst", out.machine), args.output)
    return OK


def cmd_lba(args) -> int:
    mf = _load(args.machine)
    if not isinstance(mf.machine, Lba):
        raise CliError("expected an lba machine file")
    if args.action == "compile":
        _save(MachineFile("niufst", compile_lba(mf.machine)), args.output)
        return OK
    word = parse_word(args.word, mf.machine.input_alphabet)
    report = run_lba(mf.machine, word, args.max_steps)
    if report.accepted:
        print(f"accepted steps={report.steps_to_accept}")
        return OK
    if report.halted:
        print("rejected")
        return REJECT
    print(f"unknown (step budget {args.max_steps} exhausted)")
    return UNKNOWN


def cmd_verify(args) -> int:
    name, params = _split_spec(args.lang)
    if name == "d":
        k = params[0] if params else 2
        if k < 2:
            raise CliError("d needs k >= 2")
        machine = gen_d()
        corpus = _d_corpus(k)
        disagreements = compare_on_words(machine, in_d, corpus)
        disagreements += compare_languages(
            machine, in_d, ("a", "b", "0", "1"), min(args.max_len or 8, 8)
        )
    else:
        machine, pred, alphabet, budget = _family_tools(args.lang)
        max_len = args.max_len if args.max_len is not None else budget
        disagreements = compare_languages(machine, pred, alphabet, max_len)
    if disagreements:
        for w in disagreements[:20]:
            print("disagree:", ",".join(w) if w else "λ")
        print(f"{len(disagreements)} disagreement(s)")
        return REJECT
    print("ok")
    return OK


def cmd_measure(args) -> int:
    machine, family = _measure_family(args.lang)
    lo, hi = args.min_param, args.max_param
    rows = measure_sweep_growth(machine, family, range(lo, hi + 1))
    print("param,length,sweeps")
    holes = 0
    for p, length, sweeps in rows:
        if sweeps is None:
            holes += 1
        print(f"{p},{length},{'' if sweeps is None else sweeps}")
    return REJECT if holes else OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="iufst",
        description="Iterated uniform finite-state transducer toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a machine on a word")
    p.add_argument("-m", "--machine", required=True)
    p.add_argument("-w", "--word", required=True,
                   help="symbols separated by , (plain string if single-char)")
    p.add_argument("--max-sweeps", type=int, default=None)
    p.add_argument("--tape-cap", type=int, default=DEFAULT_TAPE_CAP)
    p.add_argument("--trace", action="store_true",
                   help="print one tape per sweep boundary of an accepting run")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("convert", help="convert between machine kinds")
    p.add_argument("-m", "--machine", required=True)
    p.add_argument("--to", required=True, help="nfa | dfa | min-dfa | reduce:I")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--state-cap", type=int, default=2**20)
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("decide", help="decide language questions")
    p.add_argument("question", choices=["empty", "finite", "universal", "equiv", "subset"])
    p.add_argument("-m", "--machine", required=True)
    p.add_argument("-n", "--other", default=None)
    p.add_argument("--state-cap", type=int, default=2**20)
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("gen", help="generate a machine family member")
    p.add_argument("family",
                   help="block:K | block-nfa:K | unary:N,K | e:N,K | copy | "
                        "uexpo | d[:K] | id-ctor | expo-ctor")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("combine", help="combine constructors")
    p.add_argument("op", choices=["add", "mul"])
    p.add_argument("--left", required=True, help="id | expo")
    p.add_argument("--right", required=True, help="id | expo")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_combine)

    p = sub.add_parser("lba", help="simulate or compile linear bounded automata")
    p.add_argument("action", choices=["compile", "run"])
    p.add_argument("-m", "--machine", required=True)
    p.add_argument("-w", "--word", default="")
    p.add_argument("--max-steps", type=int, default=100_000)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_lba)

    p = sub.add_parser("verify", help="compare a family machine against its definition")
    p.add_argument("--lang", required=True)
    p.add_argument("--max-len", type=int, default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("measure", help="sweep growth table as CSV")
    p.add_argument("--lang", required=True)
    p.add_argument("--min-param", type=int, default=1)
    p.add_argument("--max-param", type=int, default=6)
    p.set_defaults(fn=cmd_measure)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ResourceBudgetError, OracleBudgetError) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return UNKNOWN
    except (CliError, MachineError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
