"""Partitions of a DFA's state set and the lattice of those with the
substitution property.

A partition is kept in canonical block form (members sorted, blocks sorted by
least member), so equality and hashing are structural.  All functions here
work on state indexes; name formatting lives in :mod:`dfadecomp.textio`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .automata import Dfa
from .errors import InputError, SizeLimitError

# Exhaustive separation search refuses above this many combined blocks.
_SUBSET_SEARCH_LIMIT = 20


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> bool:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        if ri > rj:
            ri, rj = rj, ri
        self.parent[rj] = ri
        return True

    def groups(self) -> list[list[int]]:
        by_root: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            by_root.setdefault(self.find(i), []).append(i)
        return sorted(by_root.values())


class Partition:
    """A partition of {0, .., n-1} in canonical block form."""

    __slots__ = ("blocks", "block_index")

    def __init__(self, blocks: Iterable[Iterable[int]]):
        normalized = sorted(tuple(sorted(set(b))) for b in blocks if b)
        cover: list[int] = [i for b in normalized for i in b]
        n = len(cover)
        if sorted(cover) != list(range(n)):
            raise InputError("blocks do not partition the index range exactly")
        self.blocks: tuple[tuple[int, ...], ...] = tuple(normalized)
        index = [0] * n
        for pos, block in enumerate(self.blocks):
            for i in block:
                index[i] = pos
        self.block_index: tuple[int, ...] = tuple(index)

    @classmethod
    def from_assignment(cls, labels: Iterable[int]) -> "Partition":
        by_label: dict[int, list[int]] = {}
        for i, lab in enumerate(labels):
            by_label.setdefault(lab, []).append(i)
        return cls(by_label.values())

    @staticmethod
    def singletons(n: int) -> "Partition":
        return Partition([i] for i in range(n))

    @staticmethod
    def whole(n: int) -> "Partition":
        return Partition([range(n)])

    @property
    def n(self) -> int:
        return len(self.block_index)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def is_trivial(self) -> bool:
        """True for the all-singletons and the one-block partition."""
        return self.num_blocks == self.n or self.num_blocks == 1

    def block_of(self, i: int) -> tuple[int, ...]:
        return self.blocks[self.block_index[i]]

    def same_block(self, i: int, j: int) -> bool:
        return self.block_index[i] == self.block_index[j]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def __repr__(self) -> str:
        inner = "|".join(",".join(str(i) for i in b) for b in self.blocks)
        return f"Partition({{{inner}}})"


def _check_same_ground(p1: Partition, p2: Partition) -> int:
    if p1.n != p2.n:
        raise InputError(f"partitions are over different sets ({p1.n} vs {p2.n} elements)")
    return p1.n


def meet(p1: Partition, p2: Partition) -> Partition:
    """Coarsest common refinement: blocks are the nonempty block intersections."""
    n = _check_same_ground(p1, p2)
    cells: dict[tuple[int, int], list[int]] = {}
    for i in range(n):
        cells.setdefault((p1.block_index[i], p2.block_index[i]), []).append(i)
    return Partition(cells.values())


def join(p1: Partition, p2: Partition) -> Partition:
    """Finest common coarsening, via union-find over both block structures."""
    n = _check_same_ground(p1, p2)
    uf = _UnionFind(n)
    for block in itertools.chain(p1.blocks, p2.blocks):
        for i in block[1:]:
            uf.union(block[0], i)
    return Partition(uf.groups())


def leq(p1: Partition, p2: Partition) -> bool:
    """True iff p1 refines p2 (every block of p1 sits inside a block of p2)."""
    _check_same_ground(p1, p2)
    return all(
        p2.block_index[block[0]] == p2.block_index[i] for block in p1.blocks for i in block[1:]
    )


def is_sp(dfa: Dfa, pi: Partition) -> bool:
    """Substitution property: states sharing a block have co-block successors
    under every symbol."""
    if pi.n != dfa.n:
        raise InputError("partition does not cover the automaton's state set")
    for block in pi.blocks:
        if len(block) == 1:
            continue
        lead = block[0]
        for a in range(len(dfa.alphabet)):
            target = pi.block_index[dfa.table[lead][a]]
            for i in block[1:]:
                if pi.block_index[dfa.table[i][a]] != target:
                    return False
    return True


def min_sp_merging(dfa: Dfa, p: str, t: str) -> Partition:
    """Finest substitution-property partition putting ``p`` and ``t`` in one block.

    Closure by union-find: whenever two merged states disagree on a successor
    block, the successors are merged as well, until stable.
    """
    return _min_sp_merging_idx(dfa, dfa.state_index(p), dfa.state_index(t))


def _min_sp_merging_idx(dfa: Dfa, p: int, t: int) -> Partition:
    uf = _UnionFind(dfa.n)
    pending = [(p, t)]
    uf.union(p, t)
    syms = range(len(dfa.alphabet))
    while pending:
        x, y = pending.pop()
        for a in syms:
            sx, sy = dfa.table[x][a], dfa.table[y][a]
            if uf.union(sx, sy):
                pending.append((sx, sy))
    return Partition(uf.groups())


@dataclass(frozen=True)
class SpLattice:
    """Every substitution-property partition of one DFA, with atom provenance.

    ``atoms`` maps each unordered state-name pair to the finest S.P. partition
    merging that pair; every element of the lattice is a join of atoms.
    """

    dfa_fingerprint: str
    elements: tuple[Partition, ...]
    atoms: Mapping[tuple[str, str], Partition]

    _element_set: frozenset[Partition] = field(
        init=False, repr=False, compare=False, default=frozenset()
    )

    def __post_init__(self):
        object.__setattr__(self, "_element_set", frozenset(self.elements))

    def __contains__(self, pi: Partition) -> bool:
        return pi in self._element_set

    @property
    def bottom(self) -> Partition:
        return self.elements[0]

    @property
    def top(self) -> Partition:
        return self.elements[-1]

    def nontrivial(self) -> list[Partition]:
        return [pi for pi in self.elements if not pi.is_trivial()]


def _element_sort_key(pi: Partition):
    return (-pi.num_blocks, pi.blocks)


def sp_lattice(dfa: Dfa, check_meet_closure: bool = True) -> SpLattice:
    """All S.P. partitions of ``dfa``: the atoms for every state pair, closed
    under join.

    Closure under meet is a consequence and is re-verified here when the
    lattice is small enough for the quadratic check.
    """
    n = dfa.n
    bottom = Partition.singletons(n)
    atoms: dict[tuple[str, str], Partition] = {}
    atom_values: list[Partition] = []
    seen_atoms: set[Partition] = set()
    for p in range(n):
        for t in range(p + 1, n):
            atom = _min_sp_merging_idx(dfa, p, t)
            atoms[(dfa.states[p], dfa.states[t])] = atom
            if atom not in seen_atoms:
                seen_atoms.add(atom)
                atom_values.append(atom)
    elements: set[Partition] = {bottom} | seen_atoms
    worklist = list(atom_values)
    while worklist:
        current = worklist.pop()
        for atom in atom_values:
            candidate = join(current, atom)
            if candidate not in elements:
                elements.add(candidate)
                worklist.append(candidate)
    ordered = tuple(sorted(elements, key=_element_sort_key))
    if check_meet_closure and len(ordered) <= 1000:
        for x, y in itertools.combinations(ordered, 2):
            if meet(x, y) not in elements:
                raise RuntimeError("internal invariant violated: lattice not meet-closed")
    return SpLattice(dfa_fingerprint=dfa.fingerprint(), elements=ordered, atoms=atoms)


@dataclass(frozen=True)
class SeparationWitness:
    """Block choices whose union intersection is exactly the accepting set.

    Entries are block positions into the first and second partition.
    """

    blocks_from_1: tuple[int, ...]
    blocks_from_2: tuple[int, ...]


def _union_of(pi: Partition, picks: Iterable[int]) -> set[int]:
    out: set[int] = set()
    for b in picks:
        out.update(pi.blocks[b])
    return out


def _exhaustive_separation(
    p1: Partition, p2: Partition, finals: frozenset[int]
) -> SeparationWitness | None:
    """Plain subset search over both block families; small inputs only."""
    b1, b2 = p1.num_blocks, p2.num_blocks
    for mask1 in range(1 << b1):
        picks1 = [i for i in range(b1) if mask1 >> i & 1]
        union1 = _union_of(p1, picks1)
        if not finals <= union1:
            continue
        for mask2 in range(1 << b2):
            picks2 = [i for i in range(b2) if mask2 >> i & 1]
            if union1 & _union_of(p2, picks2) == finals:
                return SeparationWitness(tuple(picks1), tuple(picks2))
    return None


def separates_finals(
    p1: Partition, p2: Partition, finals: Iterable[int]
) -> SeparationWitness | None:
    """Witness that some block unions of p1 and p2 intersect exactly in ``finals``.

    Any witness must pick every block meeting ``finals``, and adding blocks can
    only grow the intersection, so the minimal candidate below is decisive.
    The exhaustive fallback is kept as a guard for that argument and bounds the
    subset space at 2**20.
    """
    n = _check_same_ground(p1, p2)
    fin = frozenset(finals)
    if not all(0 <= i < n for i in fin):
        raise InputError("final states are not a subset of the partitioned set")
    picks1 = tuple(sorted({p1.block_index[i] for i in fin}))
    picks2 = tuple(sorted({p2.block_index[i] for i in fin}))
    if _union_of(p1, picks1) & _union_of(p2, picks2) == fin:
        return SeparationWitness(picks1, picks2)
    if p1.num_blocks + p2.num_blocks > _SUBSET_SEARCH_LIMIT:
        raise SizeLimitError(
            f"separation subset search over {p1.num_blocks}+{p2.num_blocks} blocks "
            f"exceeds the 2**{_SUBSET_SEARCH_LIMIT} limit"
        )
    return _exhaustive_separation(p1, p2, fin)


def is_distributive(lattice: SpLattice) -> bool:
    """True iff meet distributes over join across all element triples."""
    elements = lattice.elements
    for x in elements:
        for y in elements:
            for z in elements:
                if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)):
                    return False
    return True


def quotient(
    dfa: Dfa,
    pi: Partition,
    accepting_blocks: Iterable[int],
    name: str | None = None,
) -> Dfa:
    """Automaton on the blocks of an S.P. partition.

    ``accepting_blocks`` are block positions into ``pi``.  Block states are
    named by joining their member names with ``+``.
    """
    if pi.n != dfa.n:
        raise InputError("partition does not cover the automaton's state set")
    if not is_sp(dfa, pi):
        raise InputError("partition lacks the substitution property")
    acc = set()
    for b in accepting_blocks:
        if not 0 <= b < pi.num_blocks:
            raise InputError(f"accepting block index {b} out of range")
        acc.add(b)
    names = tuple("+".join(dfa.states[i] for i in block) for block in pi.blocks)
    table = tuple(
        tuple(pi.block_index[dfa.table[block[0]][a]] for a in range(len(dfa.alphabet)))
        for block in pi.blocks
    )
    return Dfa(
        name=name if name is not None else f"{dfa.name}_quot",
        states=names,
        alphabet=dfa.alphabet,
        table=table,
        initial=pi.block_index[dfa.initial],
        accepting=frozenset(acc),
    )
