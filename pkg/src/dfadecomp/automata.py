"""Complete deterministic finite automata and their fundamental algorithms.

States and symbols are opaque string tokens at the API surface; internally
every automaton is stored as a dense transition table indexed by position so
that searches over many small automata stay cheap.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import InputError

# A StateMap sends every (reachable) state of one DFA to a state of another.
StateMap = dict[str, str]

Word = str | Iterable[str]


@dataclass(frozen=True)
class Dfa:
    """A complete DFA: total transition table, one initial state, accepting set.

    ``table[i][a]`` is the index of the successor of state ``i`` under the
    ``a``-th alphabet symbol.  The table must be total; partial automata are
    rejected rather than silently completed with a sink, because state counts
    are the complexity measure everything else in this package reports.
    """

    name: str
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    initial: int
    accepting: frozenset[int]

    _state_index: dict[str, int] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )
    _symbol_index: dict[str, int] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self):
        n, s = len(self.states), len(self.alphabet)
        if n == 0:
            raise InputError("automaton needs at least one state")
        if len(set(self.states)) != n:
            raise InputError("state names are not pairwise distinct")
        if len(set(self.alphabet)) != s:
            raise InputError("alphabet symbols are not pairwise distinct")
        if len(self.table) != n or any(len(row) != s for row in self.table):
            raise InputError("transition table shape does not match states and alphabet")
        for row in self.table:
            for target in row:
                if not 0 <= target < n:
                    raise InputError(f"transition target index {target} out of range")
        if not 0 <= self.initial < n:
            raise InputError("initial state is not a state of the automaton")
        if not all(0 <= i < n for i in self.accepting):
            raise InputError("accepting set is not a subset of the states")
        self._state_index.update((q, i) for i, q in enumerate(self.states))
        self._symbol_index.update((a, i) for i, a in enumerate(self.alphabet))

    @classmethod
    def build(
        cls,
        name: str,
        states: Iterable[str],
        alphabet: Iterable[str],
        delta: Mapping[tuple[str, str], str],
        initial: str,
        accepting: Iterable[str],
    ) -> "Dfa":
        """Construct from named components, checking totality of ``delta``."""
        states = tuple(states)
        alphabet = tuple(alphabet)
        sidx = {q: i for i, q in enumerate(states)}
        aidx = {a: i for i, a in enumerate(alphabet)}
        if len(sidx) != len(states):
            raise InputError("state names are not pairwise distinct")
        if len(aidx) != len(alphabet):
            raise InputError("alphabet symbols are not pairwise distinct")
        rows = [[-1] * len(alphabet) for _ in states]
        for (q, a), target in delta.items():
            if q not in sidx:
                raise InputError(f"transition from unknown state {q!r}")
            if a not in aidx:
                raise InputError(f"transition on unknown symbol {a!r}")
            if target not in sidx:
                raise InputError(f"transition to unknown state {target!r}")
            if rows[sidx[q]][aidx[a]] != -1:
                raise InputError(f"duplicate transition for ({q!r}, {a!r})")
            rows[sidx[q]][aidx[a]] = sidx[target]
        for q in states:
            for a in alphabet:
                if rows[sidx[q]][aidx[a]] == -1:
                    raise InputError(f"missing transition for ({q!r}, {a!r})")
        if initial not in sidx:
            raise InputError(f"initial state {initial!r} is not a state")
        acc = set()
        for q in accepting:
            if q not in sidx:
                raise InputError(f"accepting state {q!r} is not a state")
            acc.add(sidx[q])
        return cls(
            name=name,
            states=states,
            alphabet=alphabet,
            table=tuple(tuple(row) for row in rows),
            initial=sidx[initial],
            accepting=frozenset(acc),
        )

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def initial_state(self) -> str:
        return self.states[self.initial]

    @property
    def accepting_states(self) -> frozenset[str]:
        return frozenset(self.states[i] for i in self.accepting)

    def state_index(self, q: str) -> int:
        try:
            return self._state_index[q]
        except KeyError:
            raise InputError(f"unknown state {q!r}") from None

    def symbol_index(self, a: str) -> int:
        try:
            return self._symbol_index[a]
        except KeyError:
            raise InputError(f"symbol {a!r} is not in the alphabet") from None

    def fingerprint(self) -> str:
        """Stable identity of the transition structure (name excluded)."""
        payload = repr(
            (self.states, self.alphabet, self.table, self.initial, sorted(self.accepting))
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _symbol_indexes(dfa: Dfa, word: Word) -> Iterator[int]:
    for a in word:
        yield dfa.symbol_index(a)


def run(dfa: Dfa, word: Word) -> str:
    """State reached from the initial state after reading ``word``."""
    i = dfa.initial
    for a in _symbol_indexes(dfa, word):
        i = dfa.table[i][a]
    return dfa.states[i]


def accepts(dfa: Dfa, word: Word) -> bool:
    return dfa.state_index(run(dfa, word)) in dfa.accepting


def reachable_indexes(dfa: Dfa) -> list[int]:
    """Indexes of states reachable from the initial state, in BFS order."""
    seen = [False] * dfa.n
    seen[dfa.initial] = True
    order = [dfa.initial]
    queue = deque(order)
    while queue:
        i = queue.popleft()
        for j in dfa.table[i]:
            if not seen[j]:
                seen[j] = True
                order.append(j)
                queue.append(j)
    return order


def trim(dfa: Dfa, name: str | None = None) -> Dfa:
    """Restriction to the reachable states, original state order preserved."""
    keep = sorted(reachable_indexes(dfa))
    if len(keep) == dfa.n:
        return dfa if name is None else _renamed(dfa, name)
    remap = {old: new for new, old in enumerate(keep)}
    return Dfa(
        name=name if name is not None else dfa.name,
        states=tuple(dfa.states[i] for i in keep),
        alphabet=dfa.alphabet,
        table=tuple(tuple(remap[dfa.table[i][a]] for a in range(len(dfa.alphabet))) for i in keep),
        initial=remap[dfa.initial],
        accepting=frozenset(remap[i] for i in dfa.accepting if i in remap),
    )


def _renamed(dfa: Dfa, name: str) -> Dfa:
    return Dfa(name, dfa.states, dfa.alphabet, dfa.table, dfa.initial, dfa.accepting)


def minimize(dfa: Dfa) -> tuple[Dfa, StateMap]:
    """Minimal DFA for the same language, plus the merging map.

    Unreachable states are removed first, then Moore partition refinement
    merges behaviorally equivalent states.  The returned map sends every
    reachable state of the input onto the state of the result that simulates
    it, so ``f(run(dfa, w)) == run(result, w)`` for every word ``w``.

    Merged states are named by joining the member names with ``+`` in the
    original state order.
    """
    base = trim(dfa)
    n = base.n
    syms = range(len(base.alphabet))
    block = [1 if i in base.accepting else 0 for i in range(n)]
    while True:
        signatures = {}
        new_block = [0] * n
        for i in range(n):
            sig = (block[i], tuple(block[base.table[i][a]] for a in syms))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_block[i] = signatures[sig]
        if new_block == block:
            break
        block = new_block
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(block[i], []).append(i)
    ordered = sorted(groups.values(), key=lambda g: g[0])
    block_pos = {}
    for pos, members in enumerate(ordered):
        for i in members:
            block_pos[i] = pos
    names = tuple("+".join(base.states[i] for i in members) for members in ordered)
    table = tuple(
        tuple(block_pos[base.table[members[0]][a]] for a in syms) for members in ordered
    )
    result = Dfa(
        name=dfa.name + "_min",
        states=names,
        alphabet=base.alphabet,
        table=table,
        initial=block_pos[base.initial],
        accepting=frozenset(block_pos[i] for i in base.accepting),
    )
    mapping: StateMap = {base.states[i]: names[block_pos[i]] for i in range(n)}
    return result, mapping


def _require_same_alphabet(a: Dfa, b: Dfa) -> list[int]:
    """Column remap of b onto a's alphabet order; error on a set mismatch."""
    if set(a.alphabet) != set(b.alphabet):
        raise InputError(
            f"alphabet mismatch: {sorted(a.alphabet)} vs {sorted(b.alphabet)}"
        )
    return [b.symbol_index(sym) for sym in a.alphabet]


def parallel_connection(a1: Dfa, a2: Dfa, name: str | None = None) -> Dfa:
    """Product automaton accepting the intersection of the two languages.

    The state set is the full Cartesian product; accepting pairs are those
    accepting on both sides.
    """
    cols2 = _require_same_alphabet(a1, a2)
    syms = range(len(a1.alphabet))
    n2 = a2.n
    states = tuple(f"{p}.{q}" for p in a1.states for q in a2.states)
    table = tuple(
        tuple(a1.table[i][a] * n2 + a2.table[j][cols2[a]] for a in syms)
        for i in range(a1.n)
        for j in range(n2)
    )
    accepting = frozenset(i * n2 + j for i in a1.accepting for j in a2.accepting)
    return Dfa(
        name=name if name is not None else f"{a1.name}_x_{a2.name}",
        states=states,
        alphabet=a1.alphabet,
        table=table,
        initial=a1.initial * n2 + a2.initial,
        accepting=accepting,
    )


def difference_witness(a: Dfa, b: Dfa) -> tuple[str, ...] | None:
    """Shortest-first word accepted by exactly one of the two, or None."""
    cols2 = _require_same_alphabet(a, b)
    syms = range(len(a.alphabet))
    start = (a.initial, b.initial)
    parents: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        i, j = pair
        if (i in a.accepting) != (j in b.accepting):
            word: list[str] = []
            cursor = pair
            while parents[cursor] is not None:
                cursor, sym = parents[cursor]
                word.append(a.alphabet[sym])
            return tuple(reversed(word))
        for s in syms:
            nxt = (a.table[i][s], b.table[j][cols2[s]])
            if nxt not in parents:
                parents[nxt] = (pair, s)
                queue.append(nxt)
    return None


def equivalent(a: Dfa, b: Dfa) -> bool:
    """True iff the two automata accept the same language."""
    return difference_witness(a, b) is None


def reachable_triples(a: Dfa, a1: Dfa, a2: Dfa) -> frozenset[tuple[str, str, str]]:
    """All (state, state, state) configurations jointly reached by some word."""
    cols1 = _require_same_alphabet(a, a1)
    cols2 = _require_same_alphabet(a, a2)
    syms = range(len(a.alphabet))
    start = (a.initial, a1.initial, a2.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        i, j, k = queue.popleft()
        for s in syms:
            nxt = (a.table[i][s], a1.table[j][cols1[s]], a2.table[k][cols2[s]])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset((a.states[i], a1.states[j], a2.states[k]) for i, j, k in seen)


def canonical_form(dfa: Dfa, sort_alphabet: bool = False) -> Dfa:
    """Reachable part renumbered by BFS from the initial state.

    Two automata have equal canonical tables, initial, and accepting sets iff
    their reachable parts are isomorphic (over the same alphabet order).
    """
    alphabet = tuple(sorted(dfa.alphabet)) if sort_alphabet else dfa.alphabet
    cols = [dfa.symbol_index(a) for a in alphabet]
    order: list[int] = [dfa.initial]
    number = {dfa.initial: 0}
    queue = deque(order)
    while queue:
        i = queue.popleft()
        for c in cols:
            j = dfa.table[i][c]
            if j not in number:
                number[j] = len(number)
                order.append(j)
                queue.append(j)
    table = tuple(tuple(number[dfa.table[i][c]] for c in cols) for i in order)
    return Dfa(
        name=dfa.name,
        states=tuple(f"s{k}" for k in range(len(order))),
        alphabet=alphabet,
        table=table,
        initial=0,
        accepting=frozenset(number[i] for i in dfa.accepting if i in number),
    )


def isomorphic(a: Dfa, b: Dfa) -> bool:
    """True iff the reachable parts are isomorphic (state names ignored)."""
    if set(a.alphabet) != set(b.alphabet):
        return False
    ca = canonical_form(a, sort_alphabet=True)
    cb = canonical_form(b, sort_alphabet=True)
    return (ca.table, ca.initial, ca.accepting) == (cb.table, cb.initial, cb.accepting)
