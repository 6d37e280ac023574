"""Independent brute-force helpers for the test suite.

These deliberately avoid the package's own algorithms: partitions are plain
frozensets of frozensets, language checks enumerate words, and state
distinguishability walks the transition monoid.  Where a test compares the
implementation against "the oracle", the oracle lives here.
"""

from __future__ import annotations

import itertools
from collections import deque

from dfadecomp import Dfa, Partition, accepts

Block = frozenset[int]
FsPartition = frozenset[Block]


def words_up_to(alphabet, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def language(dfa: Dfa, max_len: int) -> frozenset[tuple[str, ...]]:
    return frozenset(w for w in words_up_to(dfa.alphabet, max_len) if accepts(dfa, w))


def fs(pi: Partition) -> FsPartition:
    return frozenset(frozenset(b) for b in pi.blocks)


def fs_meet(x: FsPartition, y: FsPartition) -> FsPartition:
    return frozenset(b1 & b2 for b1 in x for b2 in y if b1 & b2)


def fs_join(x: FsPartition, y: FsPartition) -> FsPartition:
    blocks = [set(b) for b in x | y]
    merged = True
    while merged:
        merged = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if blocks[i] & blocks[j]:
                    blocks[i] |= blocks[j]
                    del blocks[j]
                    merged = True
                    break
            if merged:
                break
    out = set()
    for b in blocks:
        out.add(frozenset(b))
    return frozenset(out)


def fs_refines(x: FsPartition, y: FsPartition) -> bool:
    return all(any(bx <= by for by in y) for bx in x)


def fs_is_sp(dfa: Dfa, x: FsPartition) -> bool:
    """Substitution property straight from its pairwise definition."""
    def block_of(i: int) -> Block:
        for b in x:
            if i in b:
                return b
        raise AssertionError("not a partition of the state set")

    for p in range(dfa.n):
        for q in range(dfa.n):
            if block_of(p) != block_of(q):
                continue
            for a in range(len(dfa.alphabet)):
                if block_of(dfa.table[p][a]) != block_of(dfa.table[q][a]):
                    return False
    return True


def all_fs_partitions(n: int):
    """Every partition of range(n), grown element by element."""
    parts: list[list[list[int]]] = [[]]
    for element in range(n):
        grown = []
        for p in parts:
            for i in range(len(p)):
                grown.append([b + [element] if j == i else b for j, b in enumerate(p)])
            grown.append(p + [[element]])
        parts = grown
    for p in parts:
        yield frozenset(frozenset(b) for b in p)


def distinguishable_pairs(dfa: Dfa) -> set[frozenset[int]]:
    """State pairs told apart by some word, via the transition monoid."""
    identity = tuple(range(dfa.n))
    seen = {identity}
    queue = deque([identity])
    separated: set[frozenset[int]] = set()
    while queue:
        image = queue.popleft()
        bits = tuple(1 if i in dfa.accepting else 0 for i in image)
        for p in range(dfa.n):
            for q in range(p + 1, dfa.n):
                if bits[p] != bits[q]:
                    separated.add(frozenset((p, q)))
        for a in range(len(dfa.alphabet)):
            nxt = tuple(dfa.table[i][a] for i in image)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return separated


def is_minimal(dfa: Dfa) -> bool:
    """Reachability plus pairwise distinguishability, independently checked."""
    reached = {dfa.initial}
    queue = deque([dfa.initial])
    while queue:
        i = queue.popleft()
        for j in dfa.table[i]:
            if j not in reached:
                reached.add(j)
                queue.append(j)
    if len(reached) != dfa.n:
        return False
    separated = distinguishable_pairs(dfa)
    return all(
        frozenset((p, q)) in separated
        for p in range(dfa.n)
        for q in range(p + 1, dfa.n)
    )


def one_state(alphabet=("a", "b"), accepting=True) -> Dfa:
    return Dfa(
        name="one",
        states=("s",),
        alphabet=tuple(alphabet),
        table=(tuple(0 for _ in alphabet),),
        initial=0,
        accepting=frozenset({0} if accepting else ()),
    )


def exhaustive_separation_exists(x: FsPartition, y: FsPartition, finals: frozenset[int]) -> bool:
    """Plain double subset search over the block families."""
    xs = sorted(x, key=sorted)
    ys = sorted(y, key=sorted)
    for r in range(len(xs) + 1):
        for picks1 in itertools.combinations(xs, r):
            u1 = set().union(*picks1) if picks1 else set()
            for s in range(len(ys) + 1):
                for picks2 in itertools.combinations(ys, s):
                    u2 = set().union(*picks2) if picks2 else set()
                    if u1 & u2 == finals:
                        return True
    return False
