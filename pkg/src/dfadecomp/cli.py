"""Command-line surface: generate, minimize, analyze and visualize automata.

Subcommands read one DFA document from a file argument or stdin, so they
compose in pipelines.  Exit codes: 0 success or decomposition found, 1 clean
"none found" or exhaustion certificate, 2 usage or input error, 3 budget
refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automata import Dfa, minimize
from .decompositions import (
    DecompositionKind,
    ReportEntry,
    decompose_ai_sufficient,
    decompose_asb,
    decompose_sb,
    decompose_wai_sufficient,
    verify,
)
from .errors import BudgetError, InputError
from .families import (
    gen_a4b4_triple,
    gen_example31,
    gen_grid,
    gen_k_extension,
    gen_lkl,
    gen_ln,
    gen_sb_not_asb,
)
from .oracle import (
    ExhaustionCertificate,
    SearchBudget,
    certify_undecomposable,
    estimate_search_space,
)
from .partitions import Partition, sp_lattice
from .textio import export_dot, format_partition, parse_dfa, parse_partition, print_dfa

_WITNESS_KIND = {
    DecompositionKind.SB: "embedding",
    DecompositionKind.ASB: "embedding",
    DecompositionKind.AI: "separation",
    DecompositionKind.SI: "mapping",
    DecompositionKind.WAI: "relation",
}


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc}") from None


def _load_dfa(path: str | None) -> Dfa:
    return parse_dfa(_read_text(path))


def _require_params(args: argparse.Namespace, names: list[str]) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"family {args.family!r} requires {', '.join(missing)}")


def _cmd_gen(args: argparse.Namespace) -> int:
    family = args.family
    if family == "ln":
        _require_params(args, ["n"])
        out = [gen_ln(args.n)]
    elif family == "lkl":
        _require_params(args, ["k", "l"])
        out = [gen_lkl(args.k, args.l)]
    elif family == "grid":
        _require_params(args, ["r", "s"])
        out = [gen_grid(args.r, args.s)]
    elif family == "kext":
        _require_params(args, ["k"])
        out = [gen_k_extension(_load_dfa(args.input), args.k)]
    elif family == "example31_min":
        out = [gen_example31()[0]]
    elif family == "example31_prime":
        out = [gen_example31()[1]]
    elif family == "a4b4_triple":
        triple = gen_a4b4_triple()
        if args.index is not None:
            if not 0 <= args.index < 3:
                raise InputError("--index must be 0, 1 or 2")
            out = [triple[args.index]]
        else:
            out = list(triple)
    elif family == "sb_not_asb":
        out = [gen_sb_not_asb()]
    else:  # unreachable: argparse restricts choices
        raise InputError(f"unknown family {family!r}")
    sys.stdout.write("".join(print_dfa(d) for d in out))
    return 0


def _cmd_minimize(args: argparse.Namespace) -> int:
    result, _ = minimize(_load_dfa(args.input))
    sys.stdout.write(print_dfa(result))
    return 0


def _cmd_lattice(args: argparse.Namespace) -> int:
    dfa = _load_dfa(args.input)
    lattice = sp_lattice(dfa)
    print(f"# {len(lattice.elements)} substitution-property partitions of {dfa.name}")
    for pi in lattice.elements:
        print(format_partition(pi, dfa))
    return 0


def _partition_names(pi: Partition, dfa: Dfa) -> list[list[str]]:
    return [[dfa.states[i] for i in block] for block in pi.blocks]


def _entry_json(entry: ReportEntry, dfa: Dfa) -> dict:
    d = entry.decomposition
    pa, pb = d.source_partitions
    return {
        "kind": d.kind.value,
        "a1_states": d.a1.n,
        "a2_states": d.a2.n,
        "nontrivial": entry.nontrivial,
        "perfect": entry.perfect,
        "redundant": entry.redundant,
        "partitions": [_partition_names(pa, dfa), _partition_names(pb, dfa)],
        "witness_kind": _WITNESS_KIND[d.kind],
    }


def _cmd_decompose(args: argparse.Namespace) -> int:
    dfa = _load_dfa(args.input)
    handler = {
        "sb": decompose_sb,
        "asb": decompose_asb,
        "ai": decompose_ai_sufficient,
        "wai": decompose_wai_sufficient,
    }[args.kind]
    report = handler(dfa)
    entries = [
        e
        for e in report.entries
        if (not args.nonredundant or not e.redundant)
        and (not args.perfect_only or e.perfect)
    ]
    if args.format == "json":
        print(json.dumps([_entry_json(e, dfa) for e in entries], indent=2))
    else:
        print(f"# {len(entries)} {args.kind} decomposition(s) of {dfa.name}")
        for e in entries:
            d = e.decomposition
            pa, pb = d.source_partitions
            flags = (
                f"nontrivial={'yes' if e.nontrivial else 'no'} "
                f"perfect={'yes' if e.perfect else 'no'} "
                f"redundant={'yes' if e.redundant else 'no'}"
            )
            print(
                f"{d.kind.value} a1={d.a1.n} a2={d.a2.n} {flags} "
                f"pi1={format_partition(pa, dfa)} pi2={format_partition(pb, dfa)}"
            )
    return 0 if entries else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    dfa = _load_dfa(args.dfa)
    a1 = _load_dfa(args.a1)
    a2 = _load_dfa(args.a2)
    result = verify(args.kind, dfa, a1, a2)
    if result:
        print(f"{args.kind}: verified (a1={a1.n} states, a2={a2.n} states)")
        return 0
    print(f"{args.kind}: refused: {result.reason}")
    return 1


def _cmd_oracle(args: argparse.Namespace) -> int:
    dfa = _load_dfa(args.input)
    budget = SearchBudget(args.max1, args.max2, canonical_only=not args.all_candidates)
    eff1 = min(budget.max_states_1, dfa.n - 1)
    eff2 = min(budget.max_states_2, dfa.n - 1)
    estimate = 0
    if eff1 >= 1 and eff2 >= 1:
        estimate = estimate_search_space(
            len(dfa.alphabet), SearchBudget(eff1, eff2, budget.canonical_only), args.kind
        )
    print(f"# search space estimate: {estimate}", file=sys.stderr)
    result = certify_undecomposable(args.kind, dfa, budget)
    if isinstance(result, ExhaustionCertificate):
        print(
            f"{args.kind}: no decomposition up to sizes "
            f"({result.effective_max_1}, {result.effective_max_2}); "
            f"{result.candidates_examined} candidate pairs examined"
        )
        return 1
    print(
        f"{args.kind}: counterexample found (a1={result.a1.n} states, "
        f"a2={result.a2.n} states)"
    )
    sys.stdout.write(print_dfa(result.a1))
    sys.stdout.write(print_dfa(result.a2))
    return 0


def _cmd_dot(args: argparse.Namespace) -> int:
    dfa = _load_dfa(args.input)
    pi = parse_partition(args.partition, dfa) if args.partition else None
    sys.stdout.write(export_dot(dfa, pi))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decomp",
        description="Solver/advisor decompositions of deterministic finite automata.",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("gen", help="generate a named automaton family member")
    p.add_argument(
        "--family",
        required=True,
        choices=[
            "ln",
            "lkl",
            "grid",
            "kext",
            "example31_min",
            "example31_prime",
            "a4b4_triple",
            "sb_not_asb",
        ],
    )
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--index", type=int, help="pick one automaton of a multi-part family")
    p.add_argument("input", nargs="?", help="base automaton (kext family only)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("minimize", help="print the minimal equivalent automaton")
    p.add_argument("input", nargs="?")
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("lattice", help="list all substitution-property partitions")
    p.add_argument("input", nargs="?")
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("decompose", help="enumerate decompositions from the lattice")
    p.add_argument("--kind", required=True, choices=["sb", "asb", "ai", "wai"])
    p.add_argument("--nonredundant", action="store_true")
    p.add_argument("--perfect-only", dest="perfect_only", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("input", nargs="?")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="check a candidate decomposition pair")
    p.add_argument("--kind", required=True, choices=["sb", "asb", "ai", "si", "wai"])
    p.add_argument("dfa")
    p.add_argument("a1")
    p.add_argument("a2")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive candidate search / certification")
    p.add_argument("--kind", required=True, choices=["ai", "si", "wai"])
    p.add_argument("--max1", type=int, required=True)
    p.add_argument("--max2", type=int, required=True)
    p.add_argument(
        "--all-candidates",
        dest="all_candidates",
        action="store_true",
        help="enumerate every candidate instead of canonical representatives",
    )
    p.add_argument("input", nargs="?")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("dot", help="Graphviz export")
    p.add_argument("--partition", help="partition literal to render as clusters")
    p.add_argument("input", nargs="?")
    p.set_defaults(func=_cmd_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if not hasattr(args, "func"):
        parser.print_help(file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
