import pytest
from hypothesis import given

from conftest import gs_instances
from gscsp.core import CspInstance, Domain, difference_constraint, from_dense
from gscsp.errors import NotDS
from gscsp.oracle import (
    brute_force_solutions,
    cyclone_instance,
    infeasible_chain,
    min_solution_members,
    planted_chain,
)
from gscsp.solver import SolverState, solve_dscsp, solve_dscsp_python


def test_cyclone():
    res = solve_dscsp(cyclone_instance(include_c20=False))
    assert res.assignment == (1, 2, 3)
    assert res.feasible


def test_cyclone_with_c20():
    assert solve_dscsp(cyclone_instance()).assignment == (1, 2, 3)


def test_lonely_pair_infeasible():
    a, b = Domain([1]), Domain([6])
    res = solve_dscsp(CspInstance([a, b], [difference_constraint(0, 1, a, b, -3, 1)]))
    assert res.assignment is None and not res.feasible


def test_no_constraints_takes_first_values():
    res = solve_dscsp(CspInstance([[3, 4], [9], [-2, 0]]))
    assert res.assignment == (3, 9, -2)


def test_empty_instance():
    assert solve_dscsp(CspInstance([])).assignment == ()


def test_rejects_non_ds():
    d = Domain([1, 2, 3])
    anti = from_dense(d, d, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    with pytest.raises(NotDS) as exc:
        solve_dscsp(CspInstance([d, d], [anti]))
    assert exc.value.pair == (0, 1)


def test_skip_after_earlier_check_rechecks():
    # X1 = 3 satisfies (1, 2) but not (1, 0); the solver must not stop there
    inst = infeasible_chain(3, 5)
    assert brute_force_solutions(inst) == []
    assert solve_dscsp(inst).assignment is None


def test_planted_chain_minimum():
    inst = planted_chain(4, 30, 5, seed=3)
    assert solve_dscsp(inst).assignment == min_solution_members(inst)


def test_cursors_never_move_back():
    inst = planted_chain(8, 30, 6, seed=1)
    res = solve_dscsp_python(inst, record_cursors=True)
    assert res.feasible and res.history
    last = [0] * inst.n
    for var, to in res.history:
        assert to > last[var]
        last[var] = to
    assert tuple(last) == res.cursors
    st = SolverState(inst)
    st.scan[0] = 5
    with pytest.raises(AssertionError):
        st.advance(0, 4)


@given(gs_instances(max_n=6, max_d=8, up=False))
def test_matches_brute_force(args):
    inst, _ = args
    res = solve_dscsp(inst)
    want = min_solution_members(inst)
    assert res.assignment == want
    if want is not None:
        assert inst.is_solution(res.assignment)
