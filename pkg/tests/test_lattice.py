"""Lattice construction, enumeration, anti-absorption and algebraic laws."""

import pytest
from hypothesis import given, settings, strategies as st

from dsmfusion import (
    atom_universe,
    build_frame,
    conjoin,
    disjoin,
    empty,
    enumerate_hpset,
    from_generators,
    leq,
    minimal_parts,
    singleton,
    to_expression,
    total_ignorance,
    u_of,
)
from dsmfusion.errors import (
    DuplicateName,
    EmptyFrame,
    FrameMismatch,
    FrameTooLarge,
    IndexOutOfRange,
    InvalidIdentifier,
)


def brute_force_up_set_count(n):
    """Independent oracle: count up-closed subsets of the atom poset directly."""
    digit_sets = []
    for mask in range(1, 2**n):
        digit_sets.append(frozenset(i + 1 for i in range(n) if mask >> i & 1))
    atoms = sorted(digit_sets, key=lambda s: (len(s), sorted(s)))
    count = 0
    for subset in range(2 ** len(atoms)):
        chosen = [atoms[i] for i in range(len(atoms)) if subset >> i & 1]
        ok = True
        for s in chosen:
            for t in atoms:
                if s < t and t not in chosen:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


class TestFrame:
    def test_build(self):
        f = build_frame(["t1", "t2", "t3"])
        assert f.n == 3
        assert f.names == ("t1", "t2", "t3")

    def test_empty_frame(self):
        with pytest.raises(EmptyFrame):
            build_frame([])

    def test_duplicate_name(self):
        with pytest.raises(DuplicateName):
            build_frame(["a", "a"])

    @pytest.mark.parametrize("bad", ["1abc", "", "a b", "x-y"])
    def test_invalid_identifier(self, bad):
        with pytest.raises(InvalidIdentifier):
            build_frame(["ok", bad])


class TestAtoms:
    def test_universe_n3(self, frame3):
        labels = [a.label for a in atom_universe(frame3)]
        assert labels == ["1", "2", "3", "12", "13", "23", "123"]

    def test_universe_n1(self):
        f = build_frame(["only"])
        assert [a.label for a in atom_universe(f)] == ["1"]

    def test_universe_n4_count(self):
        f = build_frame(["a", "b", "c", "d"])
        assert len(atom_universe(f)) == 15


class TestBasicOps:
    def test_singleton_upclosure(self, frame3):
        s1 = singleton(frame3, 1)
        assert {a.label for a in s1.atoms} == {"1", "12", "13", "123"}

    def test_singleton_n1(self):
        f = build_frame(["x"])
        assert {a.label for a in singleton(f, 1).atoms} == {"1"}

    def test_singleton_n2(self):
        f = build_frame(["a", "b"])
        assert {a.label for a in singleton(f, 2).atoms} == {"2", "12"}

    def test_singleton_out_of_range(self, frame3):
        with pytest.raises(IndexOutOfRange):
            singleton(frame3, 4)
        with pytest.raises(IndexOutOfRange):
            singleton(frame3, 0)

    def test_conjoin(self, frame3):
        t1, t2 = singleton(frame3, 1), singleton(frame3, 2)
        assert {a.label for a in conjoin(t1, t2).atoms} == {"12", "123"}

    def test_conjoin_idempotent_annihilator(self, frame3):
        t1 = singleton(frame3, 1)
        assert conjoin(t1, t1) == t1
        assert conjoin(t1, empty(frame3)) == empty(frame3)

    def test_disjoin(self, frame3):
        t1, t2 = singleton(frame3, 1), singleton(frame3, 2)
        assert {a.label for a in disjoin(t1, t2).atoms} == {"1", "2", "12", "13", "23", "123"}

    def test_disjoin_identity_absorption(self, frame3):
        t1, t2 = singleton(frame3, 1), singleton(frame3, 2)
        assert disjoin(t1, empty(frame3)) == t1
        assert disjoin(t1, conjoin(t1, t2)) == t1

    def test_leq(self, frame3):
        t1, t2, t3 = (singleton(frame3, i) for i in (1, 2, 3))
        assert leq(conjoin(conjoin(t1, t2), t3), conjoin(t1, t2))
        assert leq(empty(frame3), t1)
        f2 = build_frame(["t1", "t2"])
        a, b = singleton(f2, 1), singleton(f2, 2)
        assert not leq(a, b)

    def test_frame_mismatch(self, frame3, frame2):
        with pytest.raises(FrameMismatch):
            conjoin(singleton(frame3, 1), singleton(frame2, 1))

    def test_total_ignorance(self, frame3):
        assert total_ignorance(frame3).atom_count == 7
        f1 = build_frame(["x"])
        assert total_ignorance(f1) == singleton(f1, 1)
        f2 = build_frame(["a", "b"])
        assert total_ignorance(f2) == disjoin(singleton(f2, 1), singleton(f2, 2))


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(1, 2), (2, 5), (3, 19)])
    def test_reference_counts(self, n, count):
        f = build_frame([f"t{i}" for i in range(1, n + 1)])
        assert len(enumerate_hpset(f)) == count

    def test_count_matches_brute_force_oracle(self):
        # Counts frozen from the independent enumerator: 167 for n=4.
        assert brute_force_up_set_count(4) == 167
        f = build_frame(["a", "b", "c", "d"])
        assert len(enumerate_hpset(f)) == 167

    def test_oracle_agrees_small(self):
        for n in (1, 2, 3):
            f = build_frame([f"t{i}" for i in range(1, n + 1)])
            assert len(enumerate_hpset(f)) == brute_force_up_set_count(n)

    def test_no_duplicates_and_deterministic(self, frame3):
        hp = enumerate_hpset(frame3)
        assert len(set(hp)) == len(hp)
        assert hp == enumerate_hpset(frame3)
        keys = [p.sort_key for p in hp]
        assert keys == sorted(keys)

    def test_too_large(self):
        f = build_frame([f"t{i}" for i in range(1, 7)])
        with pytest.raises(FrameTooLarge):
            enumerate_hpset(f)

    def test_n2_elements(self):
        f = build_frame(["t1", "t2"])
        exprs = {to_expression(p) for p in enumerate_hpset(f)}
        assert exprs == {"EMPTY", "t1&t2", "t1", "t2", "t1|t2"}

    def test_upclosure_invariant(self):
        f = build_frame(["a", "b", "c", "d"])
        atoms = atom_universe(f)
        for prop in enumerate_hpset(f):
            present = {a.digits for a in prop.atoms}
            for a in prop.atoms:
                for b in atoms:
                    if set(a.digits) < set(b.digits):
                        assert b.digits in present


class TestAntiAbsorption:
    def test_minimal_single_chain(self, frame3):
        x = from_generators(frame3, [(3,), (1, 3), (2, 3), (1, 2, 3)])
        assert [a.label for a in minimal_parts(x)] == ["3"]
        assert to_expression(u_of(x)) == "t3"

    def test_minimal_incomparable(self, frame3):
        x = from_generators(frame3, [(1, 3), (2, 3), (1, 2, 3)])
        assert {a.label for a in minimal_parts(x)} == {"13", "23"}
        assert u_of(x) == total_ignorance(frame3)

    def test_minimal_top(self, frame3):
        x = from_generators(frame3, [(1, 2, 3)])
        assert [a.label for a in minimal_parts(x)] == ["123"]

    def test_u_meet_join_agree(self, frame3):
        t1, t2 = singleton(frame3, 1), singleton(frame3, 2)
        both = disjoin(t1, t2)
        assert u_of(conjoin(t1, t2)) == both
        assert u_of(both) == both

    def test_u_of_empty(self, frame3):
        assert u_of(empty(frame3)) == empty(frame3)

    def test_u_23_123(self, frame3):
        x = from_generators(frame3, [(2, 3)])
        assert {a.label for a in x.atoms} == {"23", "123"}
        assert to_expression(u_of(x)) == "t2|t3"

    def test_u_chain_example(self, frame3):
        x = from_generators(frame3, [(1,)])
        assert {a.label for a in x.atoms} == {"1", "12", "13", "123"}
        # adding 23 gives atoms {1,12,13,23,123}: minimal parts {1},{23}
        y = disjoin(x, from_generators(frame3, [(2, 3)]))
        assert u_of(y) == total_ignorance(frame3)

    def test_u_idempotent_extensive_enumerated(self, frame3):
        for prop in enumerate_hpset(frame3):
            u = u_of(prop)
            assert u_of(u) == u
            assert leq(prop, u)

    def test_minimal_parts_reconstruct(self, frame3):
        for prop in enumerate_hpset(frame3):
            gens = minimal_parts(prop)
            digit_sets = [set(a.digits) for a in gens]
            for i, a in enumerate(digit_sets):
                for j, b in enumerate(digit_sets):
                    if i != j:
                        assert not a < b and not b < a
            rebuilt = from_generators(frame3, [a.digits for a in gens]) if gens else empty(frame3)
            assert rebuilt == prop


class TestExpressions:
    def test_mixed_term(self, frame3):
        p = from_generators(frame3, [(1, 2), (3,)])
        assert to_expression(p) == "(t1&t2)|t3"

    def test_single_generator(self, frame3):
        assert to_expression(singleton(frame3, 1)) == "t1"
        assert to_expression(conjoin(singleton(frame3, 1), singleton(frame3, 2))) == "t1&t2"

    def test_empty(self, frame3):
        assert to_expression(empty(frame3)) == "EMPTY"


# --- algebraic laws over random propositions (n <= 4) ---

def _props(n):
    frame = build_frame([f"t{i}" for i in range(1, n + 1)])
    gen = st.lists(
        st.sets(st.integers(1, n), min_size=1, max_size=n).map(tuple),
        min_size=0, max_size=3,
    ).map(lambda gs: from_generators(frame, gs))
    return gen


@settings(max_examples=150)
@given(data=st.data(), n=st.integers(2, 4))
def test_lattice_laws(data, n):
    props = _props(n)
    p = data.draw(props)
    q = data.draw(props)
    r = data.draw(props)
    assert conjoin(p, q) == conjoin(q, p)
    assert disjoin(p, q) == disjoin(q, p)
    assert conjoin(conjoin(p, q), r) == conjoin(p, conjoin(q, r))
    assert disjoin(disjoin(p, q), r) == disjoin(p, disjoin(q, r))
    assert disjoin(p, conjoin(p, q)) == p
    assert conjoin(p, disjoin(p, q)) == p
    assert conjoin(p, disjoin(q, r)) == disjoin(conjoin(p, q), conjoin(p, r))


@settings(max_examples=150)
@given(data=st.data(), n=st.integers(2, 4))
def test_canonical_uniqueness_and_u_props(data, n):
    props = _props(n)
    p = data.draw(props)
    q = data.draw(props)
    assert (p == q) == (p.mask == q.mask)
    u = u_of(p)
    assert u_of(u) == u
    assert leq(p, u)
