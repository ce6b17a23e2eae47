import pytest
from hypothesis import given

from conftest import staircase5, gs_instances
from gscsp.acids import (
    CONSISTENT,
    DS,
    EMPTY_DOMAIN,
    US,
    AcidsEngine,
    InvariantViolation,
    extract_bound_solutions,
    run_acids,
)
from gscsp.core import CspInstance, Domain, RowConvexConstraint, SupportInterval, difference_constraint, from_dense
from gscsp.errors import AlreadyRemoved, ClassMismatch, NotApplicable
from gscsp.oracle import ac3_reference, cyclone_instance, diff_chain


def staircase5_instance() -> CspInstance:
    c = staircase5()
    return CspInstance([c.row_domain, c.col_domain], [c])


def two_var(rows, nrows, ncols) -> CspInstance:
    di, dj = Domain(range(nrows)), Domain(range(ncols))
    ivs = tuple(None if r is None else SupportInterval(*r) for r in rows)
    return CspInstance([di, dj], [RowConvexConstraint(0, 1, di, dj, ivs)])


class TestInitialize:
    def test_staircase5_min_sets(self):
        eng = AcidsEngine(staircase5_instance())
        eng.initialize_min()
        # b1 -> [a1, a2], b3 -> [a3, a4], b5 -> [a5], b2 and b4 own nothing
        assert [eng.min_interval(0, v) for v in range(5)] == [(0, 1), None, (2, 3), None, (4, 4)]

    def test_identity(self):
        eng = AcidsEngine(two_var([(0, 0), (1, 1), (2, 2)], 3, 3))
        eng.initialize_min()
        assert [eng.min_interval(0, v) for v in range(3)] == [(0, 0), (1, 1), (2, 2)]

    def test_us_min_sets(self):
        # values 1..3 -> indices 0..2; rows [2,3], [1,2], [1,1]
        eng = AcidsEngine(two_var([(1, 2), (0, 1), (0, 0)], 3, 3), US)
        eng.initialize_min()
        assert [eng.min_interval(0, v) for v in range(3)] == [(1, 2), (0, 0), None]

    def test_class_mismatch(self):
        inst = two_var([(1, 2), (0, 1), (0, 0)], 3, 3)
        with pytest.raises(ClassMismatch):
            AcidsEngine(inst, DS)
        with pytest.raises(ClassMismatch):
            run_acids(cyclone_instance(), US)
        with pytest.raises(ValueError):
            run_acids(inst, "sideways")


class TestLocalArcCons:
    def test_staircase5_trace(self):
        eng = AcidsEngine(staircase5_instance())
        eng.initialize_min()
        eng.remove(1, 0)  # b1
        assert eng.local_arc_cons(0, 0) == []
        assert eng.min_interval(0, 1) == (0, 1)  # MIN(b2) = [a1, a2]
        assert eng.min_interval(0, 0) is None
        eng.remove(1, 1)  # b2
        assert eng.local_arc_cons(0, 1) == [0]  # a1 loses its last support
        assert eng.min_interval(0, 2) == (1, 3)  # MIN(b3) = [a2, a4]

    def test_no_min_interval_is_a_no_op(self):
        eng = AcidsEngine(staircase5_instance())
        eng.initialize_min()
        eng.remove(1, 1)  # b2 is nobody's smallest support
        assert eng.local_arc_cons(0, 1) == []
        assert [eng.min_interval(0, v) for v in range(5)] == [(0, 1), None, (2, 3), None, (4, 4)]

    def test_last_support_removed(self):
        eng = AcidsEngine(staircase5_instance())
        eng.initialize_min()
        eng.remove(1, 4)  # b5 has no successor
        assert eng.local_arc_cons(0, 4) == [4]

    def test_batch_removal_merges_as_hull(self):
        # rows r0 -> [c0, c2], r1 -> [c1, c2]; removing c0 and c1 together
        # moves both rows into MIN(c2), processed in the order c0 then c1
        eng = AcidsEngine(two_var([(0, 2), (1, 2)], 2, 3))
        eng.initialize_min()
        eng.remove(1, 0)
        eng.remove(1, 1)
        assert eng.local_arc_cons(0, 0) == []
        assert eng.local_arc_cons(0, 1) == []
        assert eng.min_interval(0, 2) == (0, 1)
        eng._verify_arc(0)

    def test_batch_removal_end_to_end(self):
        # X2 kills columns 0 and 1 of X1 in one step; later X2 kills column 2
        d = Domain(range(3))
        c01 = RowConvexConstraint(0, 1, d, d, (SupportInterval(0, 2), SupportInterval(1, 2), None))
        c12 = RowConvexConstraint(1, 2, d, Domain([0]), (None, None, SupportInterval(0, 0)))
        inst = CspInstance([d, d, Domain([0])], [c01, c12])
        res = run_acids(inst, check_invariants=True)
        assert res.domains == ac3_reference(inst).domains == ((0, 1), (2,), (0,))


class TestRemove:
    def test_splice(self):
        eng = AcidsEngine(two_var([(0, 0), (1, 1), (2, 2)], 3, 3))
        eng.remove(0, 1)
        assert eng.view(0) == [0, 2]
        assert eng.succ(0, 0) == 2
        assert eng.pred(0, 2) == 0

    def test_remove_everything(self):
        eng = AcidsEngine(two_var([(0, 0), (1, 1), (2, 2)], 3, 3))
        for r in range(3):
            eng.remove(0, r)
        assert eng.view(0) == []
        assert eng.alive_count[0] == 0

    def test_shared_across_arcs(self):
        d = Domain([1, 2, 3])
        a = difference_constraint(0, 1, d, d, -1, 1)
        b = difference_constraint(0, 2, d, d, -1, 1)
        eng = AcidsEngine(CspInstance([d, d, d], [a, b]))
        eng.remove(0, 1)
        assert eng.view(0) == [0, 2] and eng.view(2) == [0, 2]
        assert not eng.is_active(0, 1)

    def test_double_remove(self):
        eng = AcidsEngine(two_var([(0, 0), (1, 1)], 2, 2))
        eng.remove(0, 0)
        with pytest.raises(AlreadyRemoved):
            eng.remove(0, 0)

    def test_stale_successor_chain(self):
        eng = AcidsEngine(two_var([(0, 0), (1, 1), (2, 2), (3, 3)], 4, 4))
        eng.remove(0, 1)
        eng.remove(0, 2)
        eng.remove(0, 0)
        # node 0 is removed but still points into the removed run
        assert eng.succ(0, 0) == 3


class TestRun:
    def test_cyclone(self):
        res = run_acids(cyclone_instance())
        assert res.status == CONSISTENT
        assert res.domains == ((1, 5, 9), (2, 6, 8), (3, 4, 10))
        assert extract_bound_solutions(cyclone_instance(), res) == ((1, 2, 3), (9, 8, 10))

    def test_lonely_pair(self):
        inst = CspInstance(
            [Domain([1]), Domain([6])], [difference_constraint(0, 1, Domain([1]), Domain([6]), -3, 1)]
        )
        res = run_acids(inst)
        assert res.status == EMPTY_DOMAIN and res.empty_var == 0
        with pytest.raises(NotApplicable):
            extract_bound_solutions(inst, res)

    def test_fixpoint_is_no_op(self):
        inst = cyclone_instance(include_c20=False)
        eng = AcidsEngine(inst)
        res = eng.run()
        assert res.domains == tuple(tuple(d) for d in inst.domains)
        assert not eng.queue

    def test_no_constraints(self):
        inst = CspInstance([[4, 7], [1]])
        res = run_acids(inst)
        assert res.consistent
        assert extract_bound_solutions(inst, res) == ((4, 1), (7, 1))

    def test_singletons(self):
        inst = CspInstance([[1], [2]], [difference_constraint(0, 1, Domain([1]), Domain([2]), -1, -1)])
        first, last = extract_bound_solutions(inst, run_acids(inst))
        assert first == last == (1, 2)

    def test_us_refuses_extraction(self):
        d = Domain([1, 2, 3])
        anti = from_dense(d, d, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        inst = CspInstance([d, d], [anti])
        res = run_acids(inst, US)
        assert res.consistent
        with pytest.raises(NotApplicable):
            extract_bound_solutions(inst, res)

    def test_enqueued_once_per_arc(self):
        eng = AcidsEngine(diff_chain(6, 20), check_invariants=True)
        eng.run()
        assert eng.max_enqueued
        assert max(eng.max_enqueued.values()) == 1

    def test_verify_detects_corruption(self):
        eng = AcidsEngine(staircase5_instance())
        eng.initialize_min()
        eng.min_lo[eng.col_off[0] + 2] = 1  # MIN(b3) now overlaps MIN(b1)
        with pytest.raises(InvariantViolation):
            eng.verify()

    def test_env_switch_enables_checks(self, monkeypatch):
        monkeypatch.setenv("GSCSP_CHECK_INVARIANTS", "1")
        assert run_acids(cyclone_instance()).consistent


@given(gs_instances())
def test_matches_ac3(args):
    inst, direction = args
    res = run_acids(inst, direction, check_invariants=True)
    ref = ac3_reference(inst)
    assert res.status == ref.status
    if ref.consistent:
        assert res.domains == ref.domains
        if direction == DS:
            first, last = extract_bound_solutions(inst, res)
            assert inst.is_solution(first) and inst.is_solution(last)
