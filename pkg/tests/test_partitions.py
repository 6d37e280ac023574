import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from dfadecomp import (
    Dfa,
    InputError,
    Partition,
    SizeLimitError,
    gen_example31,
    gen_example31_partitions,
    gen_grid,
    gen_ln,
    is_distributive,
    is_sp,
    join,
    leq,
    meet,
    min_sp_merging,
    random_dfa,
    separates_finals,
    sp_lattice,
)
from dfadecomp.partitions import _exhaustive_separation

import helpers


@st.composite
def partition_pairs(draw, max_n=6):
    n = draw(st.integers(1, max_n))

    def labels():
        out = [0]
        for _ in range(n - 1):
            out.append(draw(st.integers(0, max(out) + 1)))
        return out

    return Partition.from_assignment(labels()), Partition.from_assignment(labels())


class TestLatticeOperations:
    def test_example31_pair_meets_to_zero(self):
        pi1, pi2 = gen_example31_partitions()
        assert meet(pi1, pi2) == Partition.singletons(6)

    def test_meet_with_top_and_bottom(self):
        pi = Partition([[0, 1], [2], [3]])
        assert meet(pi, Partition.whole(4)) == pi
        assert meet(pi, Partition.singletons(4)) == Partition.singletons(4)

    def test_join_chains_overlapping_blocks(self):
        p = Partition([[0, 1], [2], [3]])
        q = Partition([[1, 2], [0], [3]])
        assert join(p, q) == Partition([[0, 1, 2], [3]])

    def test_join_with_top_and_bottom(self):
        pi = Partition([[0, 1], [2], [3]])
        assert join(pi, Partition.singletons(4)) == pi
        assert join(pi, Partition.whole(4)) == Partition.whole(4)

    def test_leq_bounds(self):
        pi = Partition([[0, 1], [2]])
        assert leq(Partition.singletons(3), pi)
        assert leq(pi, pi)

    def test_rows_cols_incomparable_on_the_grid(self):
        g = gen_grid(2, 2)
        rows = min_sp_merging(g, "q0_0", "q0_1")
        cols = min_sp_merging(g, "q0_0", "q1_0")
        assert rows == Partition([[0, 1], [2, 3]])
        assert not leq(rows, cols)
        assert not leq(cols, rows)

    def test_mismatched_ground_sets_rejected(self):
        with pytest.raises(InputError):
            meet(Partition.singletons(2), Partition.singletons(3))
        with pytest.raises(InputError):
            join(Partition.singletons(2), Partition.singletons(3))
        with pytest.raises(InputError):
            leq(Partition.singletons(2), Partition.singletons(3))

    @settings(max_examples=120)
    @given(partition_pairs())
    def test_lattice_laws(self, pair):
        x, y = pair
        assert meet(x, y) == meet(y, x)
        assert join(x, y) == join(y, x)
        assert meet(x, x) == x
        assert join(x, x) == x
        assert leq(meet(x, y), x)
        assert leq(x, join(x, y))
        # absorption
        assert meet(x, join(x, y)) == x
        assert join(x, meet(x, y)) == x
        # agreement with the independent frozenset model
        assert helpers.fs(meet(x, y)) == helpers.fs_meet(helpers.fs(x), helpers.fs(y))
        assert helpers.fs(join(x, y)) == helpers.fs_join(helpers.fs(x), helpers.fs(y))
        assert leq(x, y) == helpers.fs_refines(helpers.fs(x), helpers.fs(y))


class TestSubstitutionProperty:
    def test_grid_rows_have_sp(self):
        g = gen_grid(3, 5)
        rows = Partition([range(i * 5, (i + 1) * 5) for i in range(3)])
        assert is_sp(g, rows)

    def test_trivial_partitions_have_sp(self):
        a = random_dfa(random.Random(2), 5)
        assert is_sp(a, Partition.singletons(5))
        assert is_sp(a, Partition.whole(5))

    def test_diagonal_pairing_lacks_sp_on_the_grid(self):
        g = gen_grid(2, 2)
        assert not is_sp(g, Partition([[0, 3], [1], [2]]))

    def test_agrees_with_pairwise_definition(self):
        rng = random.Random(5)
        for _ in range(20):
            a = random_dfa(rng, rng.randint(2, 5))
            for x in helpers.all_fs_partitions(a.n):
                pi = Partition(x)
                assert is_sp(a, pi) == helpers.fs_is_sp(a, helpers.fs(pi))

    def test_sublattice_closure(self):
        rng = random.Random(6)
        for _ in range(20):
            a = random_dfa(rng, rng.randint(2, 6))
            elements = sp_lattice(a).elements
            for x, y in itertools.combinations(elements, 2):
                assert is_sp(a, meet(x, y))
                assert is_sp(a, join(x, y))


class TestMinSpMerging:
    def test_row_pair_merges_rows(self):
        g = gen_grid(2, 2)
        assert min_sp_merging(g, "q0_0", "q0_1") == Partition([[0, 1], [2, 3]])

    def test_same_state_gives_singletons(self):
        g = gen_grid(2, 2)
        assert min_sp_merging(g, "q0_0", "q0_0") == Partition.singletons(4)

    def test_diagonal_pair_collapses_everything(self):
        g = gen_grid(2, 2)
        assert min_sp_merging(g, "q0_0", "q1_1") == Partition.whole(4)

    def test_is_least_sp_partition_merging_the_pair(self):
        rng = random.Random(9)
        for _ in range(15):
            a = random_dfa(rng, rng.randint(2, 5))
            sp_all = [
                Partition(x)
                for x in helpers.all_fs_partitions(a.n)
                if helpers.fs_is_sp(a, x)
            ]
            p, t = rng.sample(range(a.n), 2)
            atom = min_sp_merging(a, a.states[p], a.states[t])
            assert is_sp(a, atom)
            assert atom.same_block(p, t)
            for candidate in sp_all:
                if candidate.same_block(p, t):
                    assert leq(atom, candidate)


class TestSpLattice:
    def test_grid22_has_the_seven_expected_elements(self):
        g = gen_grid(2, 2)
        expected = {
            Partition.singletons(4),
            Partition.whole(4),
            Partition([[0, 1], [2, 3]]),  # rows
            Partition([[0, 2], [1, 3]]),  # cols
            Partition([[0], [1], [2, 3]]),
            Partition([[0], [2], [1, 3]]),
            Partition([[0], [1, 2, 3]]),
        }
        assert set(sp_lattice(g).elements) == expected

    def test_one_state_lattice_is_the_single_partition(self):
        lattice = sp_lattice(gen_ln(1))
        assert set(lattice.elements) == {Partition.singletons(1)}

    def test_example31_min_has_no_nontrivial_meet_zero_pair(self):
        a_min, _ = gen_example31()
        lattice = sp_lattice(a_min)
        zero = Partition.singletons(a_min.n)
        for x, y in itertools.combinations(lattice.nontrivial(), 2):
            assert meet(x, y) != zero

    def test_atom_provenance_covers_all_pairs(self):
        g = gen_grid(2, 2)
        lattice = sp_lattice(g)
        assert set(lattice.atoms) == {
            (g.states[p], g.states[t])
            for p in range(4)
            for t in range(p + 1, 4)
        }
        for pair, atom in lattice.atoms.items():
            assert atom == min_sp_merging(g, *pair)


class TestSeparatesFinals:
    def test_example31_witness(self):
        _, a_prime = gen_example31()
        pi1, pi2 = gen_example31_partitions()
        finals = {a_prime.state_index(q) for q in ("a0", "b0")}
        witness = separates_finals(pi1, pi2, finals)
        assert witness is not None
        chosen1 = {frozenset(pi1.blocks[b]) for b in witness.blocks_from_1}
        chosen2 = {frozenset(pi2.blocks[b]) for b in witness.blocks_from_2}
        named = lambda idxs: frozenset(a_prime.states[i] for i in idxs)
        assert {named(b) for b in chosen1} == {
            frozenset({"a0"}),
            frozenset({"b0", "b1"}),
        }
        assert {named(b) for b in chosen2} == {frozenset({"a0", "a1", "b0", "R0"})}

    def test_singleton_partitions_separate_any_final_set(self):
        zero = Partition.singletons(5)
        witness = separates_finals(zero, zero, {1, 3})
        assert witness is not None
        assert set(witness.blocks_from_1) == {1, 3}
        assert set(witness.blocks_from_2) == {1, 3}

    def test_grid_rows_and_cols_separate_the_corner(self):
        r, s = 3, 5
        g = gen_grid(r, s)
        rows = Partition([range(i * s, (i + 1) * s) for i in range(r)])
        cols = Partition([range(j, r * s, s) for j in range(s)])
        witness = separates_finals(rows, cols, {r * s - 1})
        assert witness is not None
        assert witness.blocks_from_1 == (r - 1,)
        assert witness.blocks_from_2 == (s - 1,)

    def test_agrees_with_exhaustive_search(self):
        rng = random.Random(13)
        for _ in range(60):
            n = rng.randint(1, 6)
            p1 = Partition.from_assignment([rng.randrange(3) for _ in range(n)])
            p2 = Partition.from_assignment([rng.randrange(3) for _ in range(n)])
            finals = frozenset(i for i in range(n) if rng.random() < 0.4)
            got = separates_finals(p1, p2, finals)
            expected = helpers.exhaustive_separation_exists(
                helpers.fs(p1), helpers.fs(p2), finals
            )
            assert (got is not None) == expected
            if got is not None:
                u1 = {i for b in got.blocks_from_1 for i in p1.blocks[b]}
                u2 = {i for b in got.blocks_from_2 for i in p2.blocks[b]}
                assert u1 & u2 == finals

    def test_fallback_agrees_with_canonical(self):
        # the in-module exhaustive fallback is never needed, but must agree
        rng = random.Random(17)
        for _ in range(40):
            n = rng.randint(1, 5)
            p1 = Partition.from_assignment([rng.randrange(2) for _ in range(n)])
            p2 = Partition.from_assignment([rng.randrange(2) for _ in range(n)])
            finals = frozenset(i for i in range(n) if rng.random() < 0.4)
            canonical = separates_finals(p1, p2, finals)
            fallback = _exhaustive_separation(p1, p2, finals)
            assert (canonical is None) == (fallback is None)

    def test_size_limit_error_is_distinct_from_none(self):
        # no witness exists, and the combined block count exceeds the limit
        n = 22
        blocks = [[0, 1]] + [[i] for i in range(2, n)]
        nearly_zero = Partition(blocks)
        with pytest.raises(SizeLimitError):
            separates_finals(nearly_zero, nearly_zero, {0})


class TestIsDistributive:
    def test_single_element_lattice(self):
        assert is_distributive(sp_lattice(gen_ln(1)))

    def test_grid22_lattice_is_not_distributive(self):
        lattice = sp_lattice(gen_grid(2, 2))
        # independent triple loop over the brute-forced elements
        elements = [
            helpers.fs(pi)
            for pi in (Partition(x) for x in helpers.all_fs_partitions(4))
            if helpers.fs_is_sp(gen_grid(2, 2), helpers.fs(pi))
        ]
        violations = any(
            helpers.fs_meet(x, helpers.fs_join(y, z))
            != helpers.fs_join(helpers.fs_meet(x, y), helpers.fs_meet(x, z))
            for x in elements
            for y in elements
            for z in elements
        )
        assert violations
        assert is_distributive(lattice) is False

    def test_diamond_from_identity_transitions(self):
        # every partition of three states has S.P. when all symbols self-loop
        a = Dfa("id3", ("x", "y", "z"), ("a",), ((0,), (1,), (2,)), 0, frozenset())
        lattice = sp_lattice(a)
        assert len(lattice.elements) == 5
        assert is_distributive(lattice) is False
