"""Independent brute-force ground truth at desk scale.

Everything here is deliberately exhaustive: partitions are enumerated one by
one and candidate automaton pairs are generated wholesale, so the results can
cross-check the constructive algorithms and certify that no small
decomposition exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .automata import Dfa, reachable_indexes
from .decompositions import Decomposition, DecompositionKind, _as_kind, verify
from .errors import BudgetError, InputError
from .partitions import Partition, is_sp

# Direct partition enumeration is capped by the Bell numbers; B(9) = 21147.
_BRUTE_STATE_LIMIT = 9

# Refuse candidate searches whose estimated size exceeds this bound.
FEASIBILITY_BOUND = 10**8


def all_partitions(n: int) -> Iterator[Partition]:
    """Every partition of {0, .., n-1}, by restricted-growth labelings."""
    if n == 0:
        yield Partition(())
        return
    labels = [0] * n

    def extend(i: int, used: int) -> Iterator[Partition]:
        if i == n:
            yield Partition.from_assignment(labels)
            return
        for lab in range(used + 1):
            labels[i] = lab
            yield from extend(i + 1, max(used, lab + 1))

    yield from extend(1, 1)


def brute_sp_partitions(dfa: Dfa) -> frozenset[Partition]:
    """All substitution-property partitions, by filtering every partition."""
    if dfa.n > _BRUTE_STATE_LIMIT:
        raise InputError(
            f"brute-force partition enumeration is capped at {_BRUTE_STATE_LIMIT} states"
        )
    return frozenset(pi for pi in all_partitions(dfa.n) if is_sp(dfa, pi))


@dataclass(frozen=True)
class SearchBudget:
    """Caps for the candidate pair search.

    With ``canonical_only`` the search enumerates one representative per
    isomorphism class: reachable candidates whose states are numbered in
    breadth-first discovery order from the initial state.
    """

    max_states_1: int
    max_states_2: int
    canonical_only: bool = True

    def __post_init__(self):
        if self.max_states_1 < 1 or self.max_states_2 < 1:
            raise InputError("budget caps must be at least 1")


@dataclass(frozen=True)
class ExhaustionCertificate:
    """Proof of work: every candidate pair within the budget was refused."""

    kind: DecompositionKind
    dfa_fingerprint: str
    budget: SearchBudget
    effective_max_1: int
    effective_max_2: int
    candidates_examined: int
    estimate: int


def estimate_search_space(
    alphabet_size: int,
    budget: SearchBudget,
    kind: "DecompositionKind | str" = DecompositionKind.WAI,
) -> int:
    """Upper bound on the number of candidate pairs the budget allows.

    Per side and size k this counts ``k**(s*k)`` transition tables, times k
    initial states (dropped under ``canonical_only``, which pins the initial
    state), times ``2**k`` accepting sets for the ``ai`` kind only.
    """
    kind = _as_kind(kind)

    def side(max_states: int) -> int:
        total = 0
        for k in range(1, max_states + 1):
            count = k ** (alphabet_size * k)
            if not budget.canonical_only:
                count *= k
            if kind is DecompositionKind.AI:
                count *= 2**k
            total += count
        return total

    return side(budget.max_states_1) * side(budget.max_states_2)


def _is_bfs_canonical(flat: tuple[int, ...], k: int, s: int) -> bool:
    """True iff BFS from state 0 discovers states exactly in index order."""
    seen = [False] * k
    seen[0] = True
    next_id = 1
    for i in range(k):
        if not seen[i]:
            return False
        base = i * s
        for a in range(s):
            j = flat[base + a]
            if not seen[j]:
                if j != next_id:
                    return False
                seen[j] = True
                next_id += 1
    return next_id == k


def candidate_automata(
    k: int,
    alphabet: tuple[str, ...],
    canonical_only: bool = True,
    accepting_subsets: bool = False,
) -> Iterator[Dfa]:
    """All k-state candidates over ``alphabet``, in deterministic table order.

    Accepting sets are empty unless ``accepting_subsets`` asks for all of
    them (needed only for language-level checks).
    """
    s = len(alphabet)
    states = tuple(f"s{i}" for i in range(k))
    acc_masks = range(1 << k) if accepting_subsets else (0,)
    for flat in itertools.product(range(k), repeat=k * s):
        if canonical_only and not _is_bfs_canonical(flat, k, s):
            continue
        table = tuple(tuple(flat[i * s : (i + 1) * s]) for i in range(k))
        initials = (0,) if canonical_only else range(k)
        for initial in initials:
            for mask in acc_masks:
                yield Dfa(
                    name=f"cand{k}",
                    states=states,
                    alphabet=alphabet,
                    table=table,
                    initial=initial,
                    accepting=frozenset(i for i in range(k) if mask >> i & 1),
                )


def certify_undecomposable(
    kind: "DecompositionKind | str", dfa: Dfa, budget: SearchBudget
) -> Decomposition | ExhaustionCertificate:
    """Search every candidate pair within the budget for a decomposition.

    Budget caps are clamped below the automaton's state count, since only
    pairs of strictly smaller automata are of interest.  Returns the first
    verifying pair in the enumeration order (sizes lexicographically, then
    table order), or a certificate that the whole space was examined.
    """
    kind = _as_kind(kind)
    if kind not in (DecompositionKind.AI, DecompositionKind.SI, DecompositionKind.WAI):
        raise InputError("undecomposability search supports the ai, si and wai kinds")
    if kind is not DecompositionKind.AI and len(reachable_indexes(dfa)) != dfa.n:
        raise InputError(
            f"{kind.value} certification requires an automaton without unreachable states"
        )
    eff1 = min(budget.max_states_1, dfa.n - 1)
    eff2 = min(budget.max_states_2, dfa.n - 1)
    estimate = 0
    if eff1 >= 1 and eff2 >= 1:
        effective = SearchBudget(eff1, eff2, budget.canonical_only)
        estimate = estimate_search_space(len(dfa.alphabet), effective, kind)
        if estimate > FEASIBILITY_BOUND:
            raise BudgetError(
                f"estimated candidate count {estimate} exceeds the feasibility "
                f"bound {FEASIBILITY_BOUND}",
                estimate=estimate,
            )
    with_accepting = kind is DecompositionKind.AI
    by_size: dict[int, list[Dfa]] = {}

    def candidates(k: int) -> list[Dfa]:
        if k not in by_size:
            by_size[k] = list(
                candidate_automata(
                    k,
                    dfa.alphabet,
                    canonical_only=budget.canonical_only,
                    accepting_subsets=with_accepting,
                )
            )
        return by_size[k]

    examined = 0
    for k in range(1, eff1 + 1):
        for l in range(1, eff2 + 1):
            for a1 in candidates(k):
                for a2 in candidates(l):
                    examined += 1
                    result = verify(kind, dfa, a1, a2)
                    if result:
                        return result
    return ExhaustionCertificate(
        kind=kind,
        dfa_fingerprint=dfa.fingerprint(),
        budget=budget,
        effective_max_1=max(eff1, 0),
        effective_max_2=max(eff2, 0),
        candidates_examined=examined,
        estimate=estimate,
    )
