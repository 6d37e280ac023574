"""Verification and construction of the five solver/advisor decomposition kinds.

A decomposition of an automaton A is a pair (A1, A2) read in parallel:

* ``ai``  -- the pair's language intersection equals L(A);
* ``si``  -- the joint final states determine A's final state (a mapping);
* ``wai`` -- the joint final states determine acceptance only (a relation);
* ``sb``  -- the parallel connection embeds A's transition structure
  (an injective state mapping);
* ``asb`` -- ``sb`` with acceptance carried along blockwise.

Constructive enumeration works over the lattice of substitution-property
partitions; verification works by a joint breadth-first search of the triple
product, so each returned witness is checked on every reachable configuration.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable

from .automata import (
    Dfa,
    minimize,
    reachable_indexes,
    _require_same_alphabet,
)
from .errors import InputError
from .partitions import (
    Partition,
    SpLattice,
    is_distributive,
    join,
    leq,
    meet,
    quotient,
    separates_finals,
    sp_lattice,
)


class DecompositionKind(str, Enum):
    AI = "ai"
    SI = "si"
    WAI = "wai"
    SB = "sb"
    ASB = "asb"


def _as_kind(kind: "DecompositionKind | str") -> DecompositionKind:
    if isinstance(kind, DecompositionKind):
        return kind
    try:
        return DecompositionKind(str(kind).lower())
    except ValueError:
        raise InputError(f"unknown decomposition kind {kind!r}") from None


@dataclass(frozen=True)
class Refusal:
    """Negative verification outcome; falsy, with the reason attached."""

    reason: str
    detail: object = None

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Decomposition:
    """A verified pair (a1, a2) with its kind-specific witness.

    The witness is an injective state mapping for ``sb``/``asb``, a mapping
    from reachable state pairs for ``si``, a relation over state pairs for
    ``wai``, and a :class:`SeparationWitness` or None for ``ai``.
    ``source_partitions`` is set when the pair was built as quotients.
    """

    kind: DecompositionKind
    a1: Dfa
    a2: Dfa
    witness: object
    source_partitions: tuple[Partition, Partition] | None = None


@dataclass(frozen=True)
class ReportEntry:
    decomposition: Decomposition
    nontrivial: bool
    perfect: bool
    redundant: bool


@dataclass(frozen=True)
class DecompositionReport:
    """Canonically ordered enumeration result for one automaton and kind."""

    dfa_fingerprint: str
    kind: DecompositionKind
    entries: tuple[ReportEntry, ...]


def _require_reachable(a: Dfa, kind: DecompositionKind) -> None:
    if len(reachable_indexes(a)) != a.n:
        raise InputError(
            f"{kind.value} verification requires an automaton without unreachable states"
        )


def _triple_bfs(a: Dfa, a1: Dfa, a2: Dfa):
    """Joint configurations reachable by a common word, with BFS parents."""
    cols1 = _require_same_alphabet(a, a1)
    cols2 = _require_same_alphabet(a, a2)
    syms = range(len(a.alphabet))
    start = (a.initial, a1.initial, a2.initial)
    parents: dict[tuple[int, int, int], tuple[tuple[int, int, int], int] | None] = {start: None}
    order = [start]
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        i, j, k = cur
        for s in syms:
            nxt = (a.table[i][s], a1.table[j][cols1[s]], a2.table[k][cols2[s]])
            if nxt not in parents:
                parents[nxt] = (cur, s)
                order.append(nxt)
                queue.append(nxt)
    return order, parents


def _word_to(parents, triple, alphabet) -> tuple[str, ...]:
    word: list[str] = []
    cursor = triple
    while parents[cursor] is not None:
        cursor, s = parents[cursor]
        word.append(alphabet[s])
    return tuple(reversed(word))


def verify(
    kind: "DecompositionKind | str", a: Dfa, a1: Dfa, a2: Dfa
) -> Decomposition | Refusal:
    """Check whether (a1, a2) decomposes ``a`` in the requested sense.

    Returns a :class:`Decomposition` carrying the witness, or a falsy
    :class:`Refusal` naming a counterexample word or state pair.  The kinds
    ``si``, ``wai``, ``sb`` and ``asb`` are only defined here for automata
    without unreachable states; language-level ``ai`` has no such restriction.
    """
    kind = _as_kind(kind)
    if kind is not DecompositionKind.AI:
        _require_reachable(a, kind)
    order, parents = _triple_bfs(a, a1, a2)

    if kind in (DecompositionKind.AI, DecompositionKind.ASB):
        for triple in order:
            i, j, k = triple
            if (i in a.accepting) != (j in a1.accepting and k in a2.accepting):
                word = _word_to(parents, triple, a.alphabet)
                return Refusal(
                    f"languages differ on word {''.join(word) or '(empty)'!r}", word
                )
        if kind is DecompositionKind.AI:
            return Decomposition(kind, a1, a2, None)

    pair_states: dict[tuple[int, int], set[int]] = {}
    for i, j, k in order:
        pair_states.setdefault((j, k), set()).add(i)

    if kind is DecompositionKind.WAI:
        relation = set()
        for (j, k), states in pair_states.items():
            flags = {i in a.accepting for i in states}
            if len(flags) == 2:
                return Refusal(
                    "reachable pair maps to states disagreeing on acceptance",
                    ((a1.states[j], a2.states[k]), tuple(sorted(a.states[i] for i in states))),
                )
            if flags == {True}:
                relation.add((a1.states[j], a2.states[k]))
        return Decomposition(kind, a1, a2, frozenset(relation))

    # si, sb and asb all need each reachable pair to pin down one state.
    beta: dict[tuple[str, str], str] = {}
    for (j, k), states in pair_states.items():
        if len(states) > 1:
            return Refusal(
                "reachable pair corresponds to more than one state",
                ((a1.states[j], a2.states[k]), tuple(sorted(a.states[i] for i in states))),
            )
        beta[(a1.states[j], a2.states[k])] = a.states[next(iter(states))]
    if kind is DecompositionKind.SI:
        return Decomposition(kind, a1, a2, beta)

    alpha: dict[str, tuple[str, str]] = {}
    for pair, state in beta.items():
        if state in alpha:
            return Refusal(
                "state is reached through two distinct pairs; the embedding "
                "cannot be injective",
                (state, alpha[state], pair),
            )
        alpha[state] = pair
    return Decomposition(kind, a1, a2, alpha)


def _acceptance_partition(a: Dfa) -> Partition:
    non_accepting = [i for i in range(a.n) if i not in a.accepting]
    blocks = [b for b in (sorted(a.accepting), non_accepting) if b]
    return Partition(blocks)


def _ordered_pair(x: Partition, y: Partition) -> tuple[Partition, Partition]:
    return (x, y) if (x.num_blocks, x.blocks) <= (y.num_blocks, y.blocks) else (y, x)


def _entry_from_partitions(
    a: Dfa,
    kind: DecompositionKind,
    pa: Partition,
    pb: Partition,
    acc1: Iterable[int],
    acc2: Iterable[int],
    witness_override: object = None,
) -> Decomposition:
    a1 = quotient(a, pa, acc1, name=f"{a.name}_q1")
    a2 = quotient(a, pb, acc2, name=f"{a.name}_q2")
    if witness_override is not None or kind is DecompositionKind.AI:
        witness = witness_override
    elif kind is DecompositionKind.WAI:
        witness = frozenset(
            (a1.states[i], a2.states[j])
            for i, b1 in enumerate(pa.blocks)
            for j, b2 in enumerate(pb.blocks)
            if set(b1) & set(b2) <= set(a.accepting)
        )
    else:
        witness = {
            a.states[i]: (a1.states[pa.block_index[i]], a2.states[pb.block_index[i]])
            for i in range(a.n)
        }
    return Decomposition(kind, a1, a2, witness, (pa, pb))


def _emission_condition(
    kind: DecompositionKind, a: Dfa
) -> Callable[[Partition, Partition], object]:
    """The sufficient condition each decompose_* uses to emit a lattice pair.

    Also reused by the redundancy check: a decomposition is redundant when a
    strictly coarser pair still satisfies the same condition.
    """
    bottom = Partition.singletons(a.n)
    finals = frozenset(a.accepting)
    if kind is DecompositionKind.SB:
        return lambda x, y: meet(x, y) == bottom
    if kind is DecompositionKind.ASB:
        return lambda x, y: meet(x, y) == bottom and separates_finals(x, y, finals)
    if kind is DecompositionKind.AI:
        return lambda x, y: separates_finals(x, y, finals)
    if kind is DecompositionKind.WAI:
        acc = _acceptance_partition(a)
        return lambda x, y: leq(meet(x, y), acc)
    raise InputError(f"no lattice-based construction for kind {kind.value!r}")


def _decompose(a: Dfa, kind: DecompositionKind) -> DecompositionReport:
    lattice = sp_lattice(a)
    condition = _emission_condition(kind, a)
    entries = []
    for x, y in itertools.combinations_with_replacement(lattice.nontrivial(), 2):
        outcome = condition(x, y)
        if not outcome:
            continue
        pa, pb = _ordered_pair(x, y)
        if kind in (DecompositionKind.ASB, DecompositionKind.AI):
            witness = separates_finals(pa, pb, a.accepting)
            d = _entry_from_partitions(
                a,
                kind,
                pa,
                pb,
                witness.blocks_from_1,
                witness.blocks_from_2,
                witness_override=witness if kind is DecompositionKind.AI else None,
            )
        else:
            d = _entry_from_partitions(a, kind, pa, pb, (), ())
        entries.append(
            ReportEntry(
                decomposition=d,
                nontrivial=d.a1.n < a.n and d.a2.n < a.n,
                perfect=d.a1.n * d.a2.n == a.n,
                redundant=is_redundant(a, d, lattice=lattice),
            )
        )
    entries.sort(
        key=lambda e: (
            e.decomposition.a1.n,
            e.decomposition.a2.n,
            e.decomposition.source_partitions[0].blocks,
            e.decomposition.source_partitions[1].blocks,
        )
    )
    return DecompositionReport(a.fingerprint(), kind, tuple(entries))


def decompose_sb(a: Dfa) -> DecompositionReport:
    """All quotient pairs from nontrivial lattice elements with meet zero."""
    return _decompose(a, DecompositionKind.SB)


def decompose_asb(a: Dfa) -> DecompositionReport:
    """As :func:`decompose_sb`, additionally separating the accepting states;
    quotient accepting sets are taken from the separation witness."""
    return _decompose(a, DecompositionKind.ASB)


def decompose_ai_sufficient(a: Dfa) -> DecompositionReport:
    """Quotient pairs whose partitions separate the accepting states.

    This is a sufficient construction only: an empty report does not prove
    that no pair of smaller automata intersects to the same language.
    """
    return _decompose(a, DecompositionKind.AI)


def decompose_wai_sufficient(a: Dfa) -> DecompositionReport:
    """Quotient pairs whose meet refines the accepting/non-accepting split.

    Sufficient only, like :func:`decompose_ai_sufficient`.
    """
    return _decompose(a, DecompositionKind.WAI)


def is_redundant(
    a: Dfa, d: Decomposition, lattice: SpLattice | None = None
) -> bool:
    """True iff some strictly coarser lattice pair still satisfies the
    condition that emitted ``d`` (meet zero for ``sb``, plus separation for
    ``asb``; the analogous condition for the sufficient ``ai``/``wai`` kinds).
    """
    if d.source_partitions is None:
        raise InputError("redundancy is defined for decompositions built from partitions")
    lat = lattice if lattice is not None else sp_lattice(a)
    p1, p2 = d.source_partitions
    condition = _emission_condition(d.kind, a)
    coarser1 = [x for x in lat.elements if leq(p1, x)]
    coarser2 = [y for y in lat.elements if leq(p2, y)]
    for x in coarser1:
        for y in coarser2:
            if x == p1 and y == p2:
                continue
            if condition(x, y):
                return True
    return False


def project_to_minimal(a: Dfa, d: Decomposition) -> Decomposition | Refusal:
    """Carry a partition-built state-behavior decomposition over to the
    minimal automaton, shrinking neither factor.

    Requires the source lattice to be distributive; otherwise the size-bounded
    projection is not guaranteed to exist and a refusal is returned.
    """
    if d.kind not in (DecompositionKind.SB, DecompositionKind.ASB):
        raise InputError("projection is defined for state-behavior decompositions")
    if d.source_partitions is None:
        raise InputError("projection needs the source partitions")
    _require_reachable(a, d.kind)
    lat = sp_lattice(a)
    if not is_distributive(lat):
        return Refusal(
            "the lattice of substitution-property partitions is not distributive, "
            "so the size-preserving projection is not guaranteed"
        )
    mdfa, f = minimize(a)
    labels = [mdfa.state_index(f[q]) for q in a.states]
    rho = Partition.from_assignment(labels)
    projected = []
    for pi in d.source_partitions:
        sigma = join(rho, pi)
        projected.append(
            Partition({labels[i] for i in block} for block in sigma.blocks)
        )
    p1, p2 = projected
    if meet(p1, p2) != Partition.singletons(mdfa.n):
        raise RuntimeError(
            "internal invariant violated: projected partitions do not meet to zero"
        )
    return _entry_from_partitions(mdfa, DecompositionKind.SB, p1, p2, (), ())


def transfer_to_minimal(
    kind: "DecompositionKind | str", a: Dfa, d: Decomposition
) -> Decomposition:
    """Re-verify an ``ai``/``si``/``wai`` decomposition against the minimal
    automaton of ``a``.  Success is guaranteed; failure signals a bug here."""
    kind = _as_kind(kind)
    if kind not in (DecompositionKind.AI, DecompositionKind.SI, DecompositionKind.WAI):
        raise InputError("transfer is defined for the ai, si and wai kinds")
    first = verify(kind, a, d.a1, d.a2)
    if not first:
        raise InputError(
            f"decomposition does not verify against the given automaton: {first.reason}"
        )
    mdfa, _ = minimize(a)
    result = verify(kind, mdfa, d.a1, d.a2)
    if not result:
        raise RuntimeError(
            "internal invariant violated: decomposition failed against the "
            f"minimal automaton: {result.reason}"
        )
    return result
