"""Constraint models: emptiness, reduction, survivors, matrices, compression."""

import random

import pytest

from dsmfusion import (
    MassAssignment,
    build_frame,
    build_model,
    compress,
    disjoin,
    empty,
    encoding_matrix,
    enumerate_hpset,
    free_model,
    parse,
    phi,
    reduce,
    shafer_model,
    singleton,
    survivors,
)
from dsmfusion.errors import FrameMismatch, MassOnEmptyClass, VacuousModel
from conftest import assignment, random_proposition


def model_for(frame, *exprs):
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_model(frame, [parse(frame, e) for e in exprs])


class TestBuildModel:
    def test_single_top_constraint(self, frame3):
        m = model_for(frame3, "t1&t2&t3")
        assert {a.label for i, a in enumerate(frame3.atoms()) if m.empty_mask >> i & 1} == {"123"}

    def test_subset_implication(self, frame3):
        m = model_for(frame3, "t1&t2")
        empties = {a.label for i, a in enumerate(frame3.atoms()) if m.empty_mask >> i & 1}
        assert empties == {"12", "123"}
        assert m.phi(parse(frame3, "t1&t2&t3")) == 0

    def test_shafer_via_mixed_constraint(self, frame3):
        m = model_for(frame3, "((t1&t2)|t3)&(t1|t2)")
        empties = {a.label for i, a in enumerate(frame3.atoms()) if m.empty_mask >> i & 1}
        assert empties == {"12", "13", "23", "123"}

    def test_vacuous_rejected(self, frame3):
        with pytest.raises(VacuousModel):
            build_model(frame3, [parse(frame3, "t1|t2|t3")])

    def test_trivial_warns(self, frame3):
        with pytest.warns(UserWarning):
            build_model(frame3, [parse(frame3, "t1"), parse(frame3, "t2")])

    def test_no_constraints_is_free(self, frame3):
        m = build_model(frame3, [])
        assert m.is_free
        assert m.empty_mask == 0


class TestPhi:
    def test_free_model(self, frame3):
        m = free_model(frame3)
        for p in enumerate_hpset(frame3):
            assert phi(m, p) == (0 if p.is_empty else 1)

    def test_m2(self, frame3):
        m = model_for(frame3, "t1&t2")
        assert phi(m, parse(frame3, "t1&t2")) == 0
        assert phi(m, parse(frame3, "t1&t3")) == 1

    def test_absolute_empty(self, frame3):
        assert phi(free_model(frame3), empty(frame3)) == 0

    def test_frame_mismatch(self, frame3, frame2):
        with pytest.raises(FrameMismatch):
            phi(free_model(frame3), singleton(frame2, 1))


class TestReduce:
    def test_m2_equivalences(self, frame3):
        m = model_for(frame3, "t1&t2")
        assert reduce(m, parse(frame3, "(t1|t3)&t2")) == parse(frame3, "t2&t3")
        assert reduce(m, parse(frame3, "(t2|t3)&t1")) == parse(frame3, "t1&t3")
        assert reduce(m, parse(frame3, "((t1&t2)|t3)&(t1|t2)")) == parse(frame3, "(t1|t2)&t3")
        assert reduce(m, parse(frame3, "(t1&t2)|t3")) == parse(frame3, "t3")

    def test_m5_non_existential(self, frame3):
        m = model_for(frame3, "t1")
        assert reduce(m, parse(frame3, "t1|t2")) == parse(frame3, "t2")

    def test_free_identity(self, frame3):
        m = free_model(frame3)
        for p in enumerate_hpset(frame3):
            assert reduce(m, p) == p

    def test_idempotent(self, frame3):
        rng = random.Random(7)
        m = model_for(frame3, "t1&t2")
        for _ in range(50):
            p = random_proposition(rng, frame3, allow_empty=True)
            assert reduce(m, reduce(m, p)) == reduce(m, p)

    def test_untouched_survivor(self, frame3):
        m = model_for(frame3, "t1&t2")
        p = parse(frame3, "t3")
        assert p.mask & m.empty_mask != 0  # t3 contains the 123 atom
        q = parse(frame3, "t1&t3")
        assert reduce(m, q) == q  # canonical member of its own class


class TestSurvivors:
    @pytest.mark.parametrize("exprs,count", [
        (("t1&t2",), 13),
        (("(t1|t3)&t2",), 10),
        (("((t1&t2)|t3)&(t1|t2)",), 8),
        (("t1",), 5),
        (("t1", "t2"), 2),
        (("(t1&t2)|t3",), 4),
    ])
    def test_reference_counts(self, frame3, exprs, count):
        assert len(survivors(model_for(frame3, *exprs))) == count

    def test_m1_count(self, frame3):
        assert len(survivors(model_for(frame3, "t1&t2&t3"))) == 18

    def test_classes_partition(self, frame3):
        m = model_for(frame3, "t1&t2")
        classes = survivors(m)
        members = [p for cls in classes for p in cls.members]
        assert sorted(members, key=lambda p: p.sort_key) == enumerate_hpset(frame3)
        for cls in classes:
            for member in cls.members:
                assert reduce(m, member) == cls.representative

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_shafer_power_set_bijection(self, n):
        frame = build_frame([f"t{i}" for i in range(1, n + 1)])
        classes = survivors(shafer_model(frame))
        assert len(classes) == 2**n
        reps = {cls.representative for cls in classes}
        assert len(reps) == 2**n
        for rep in reps:
            assert all(len(a.digits) == 1 for a in rep.generators)


class TestEncodingMatrix:
    def test_shafer_n3(self, frame3):
        basis, matrix = encoding_matrix(model_for(frame3, "((t1&t2)|t3)&(t1|t2)"))
        assert [a.label for a in basis] == ["1", "2", "3"]
        assert len(matrix) == 8
        assert sorted(tuple(r) for r in matrix) == sorted(
            [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1),
             (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1)]
        )
        assert matrix[0] == [0, 0, 0]

    def test_m6(self, frame3):
        basis, matrix = encoding_matrix(model_for(frame3, "t1", "t2"))
        assert [a.label for a in basis] == ["3"]
        assert matrix == [[0], [1]]

    def test_m7(self, frame3):
        basis, matrix = encoding_matrix(model_for(frame3, "(t1&t2)|t3"))
        assert [a.label for a in basis] == ["1", "2"]
        assert sorted(tuple(r) for r in matrix) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_m1_shape(self, frame3):
        basis, matrix = encoding_matrix(model_for(frame3, "t1&t2&t3"))
        assert [a.label for a in basis] == ["1", "2", "3", "12", "13", "23"]
        assert len(matrix) == 18
        assert len(set(map(tuple, matrix))) == 18
        # row for t1 under the canonical basis: atoms 1, 12, 13 survive
        t1_row_index = [i for i, cls in enumerate(survivors(model_for(frame3, "t1&t2&t3")))
                        if cls.representative == parse(frame3, "t1")]
        assert matrix[t1_row_index[0]] == [1, 0, 0, 1, 1, 0]


class TestCompress:
    def test_free_identity(self, frame3):
        m = free_model(frame3)
        a = assignment(frame3, {"t1": 0.4, "t2&t3": 0.6})
        c = compress(m, a)
        assert c.items() == a.items()

    def test_reference_m4_class(self, frame3):
        model = model_for(frame3, "((t1&t2)|t3)&(t1|t2)")
        a = assignment(frame3, {"t3": 0.17, "(t1&t2)|t3": 0.07, "t1": 0.76})
        c = compress(model, a)
        assert c[parse(frame3, "t3")] == pytest.approx(0.24)

    def test_reference_m3_class(self, frame3):
        model = model_for(frame3, "(t1|t3)&t2")
        a = assignment(frame3, {
            "t1&t3": 0.12, "(t1|t2)&t3": 0.03, "(t2|t3)&t1": 0.02,
            "((t1&t2)|t3)&(t1|t2)": 0.0, "t2": 0.83,
        })
        c = compress(model, a)
        assert c[parse(frame3, "t1&t3")] == pytest.approx(0.17)

    def test_mass_on_empty_class(self, frame3):
        model = model_for(frame3, "t1&t2")
        a = assignment(frame3, {"t1&t2": 0.3, "t3": 0.7})
        with pytest.raises(MassOnEmptyClass):
            compress(model, a)

    def test_total_preserved(self, frame3):
        rng = random.Random(13)
        model = model_for(frame3, "t1&t2")
        for _ in range(30):
            props = {}
            while len(props) < 4:
                q = random_proposition(rng, frame3)
                if model.phi(q) and q not in props:
                    props[q] = rng.random() + 0.01
            scale = sum(props.values())
            a = MassAssignment(frame3, {q: v / scale for q, v in props.items()})
            c = compress(model, a)
            assert abs(c.total - a.total) <= 1e-12


class TestConstraintClosureProperties:
    def test_monotonicity_and_union_closure(self):
        import warnings

        rng = random.Random(99)
        for n in (2, 3, 4):
            frame = build_frame([f"t{i}" for i in range(1, n + 1)])
            for _ in range(40):
                c = random_proposition(rng, frame)
                if c.mask == frame.full_mask:
                    continue
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    model = build_model(frame, [c]) if c.mask else free_model(frame)
                a = random_proposition(rng, frame, allow_empty=True)
                b = random_proposition(rng, frame, allow_empty=True)
                if model.phi(a) == 0:
                    for q in enumerate_hpset(frame):
                        if q.mask and q.mask & ~a.mask == 0:
                            assert model.phi(q) == 0
                if model.phi(a) == 0 and model.phi(b) == 0:
                    assert model.phi(disjoin(a, b)) == 0
