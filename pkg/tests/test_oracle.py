import pytest

from gscsp.classify import is_ds, is_us
from gscsp.core import CspInstance, Domain, difference_constraint
from gscsp.errors import InvalidSpec, TooLarge
from gscsp.fileformat import serialize
from gscsp.oracle import (
    GenSpec,
    Kind,
    Topology,
    ac3_reference,
    brute_force_solutions,
    cyclone_instance,
    dense_product,
    diff_chain,
    generate,
    infeasible_chain,
    min_solution_members,
    planted_chain,
)


def lonely() -> CspInstance:
    a, b = Domain([1]), Domain([6])
    return CspInstance([a, b], [difference_constraint(0, 1, a, b, -3, 1)])


def test_cyclone_solutions():
    # (1, 2, 4) also satisfies all three bounds: 1-2=-1, 2-4=-2, 4-1=3
    sols = brute_force_solutions(cyclone_instance(include_c20=False))
    assert sols == [(1, 2, 3), (1, 2, 4), (5, 6, 4), (9, 8, 10)]
    assert brute_force_solutions(cyclone_instance()) == sols


def test_brute_force_limit_and_product():
    inst = CspInstance([[1, 2], [3, 4, 5]])
    assert brute_force_solutions(inst) == [(a, b) for a in (1, 2) for b in (3, 4, 5)]
    assert brute_force_solutions(inst, limit=2) == [(1, 3), (1, 4)]
    assert brute_force_solutions(lonely()) == []
    assert min_solution_members(lonely()) is None


def test_brute_force_guard():
    with pytest.raises(TooLarge):
        brute_force_solutions(CspInstance([range(100)] * 4))


def test_ac3_cyclone_prunes_c20():
    res = ac3_reference(cyclone_instance())
    assert res.consistent and res.engine == "ac3"
    assert res.domains == ((1, 5, 9), (2, 6, 8), (3, 4, 10))


def test_ac3_fixpoint_and_wipeout():
    inst = cyclone_instance(include_c20=False)
    assert ac3_reference(inst).domains == tuple(tuple(d) for d in inst.domains)
    res = ac3_reference(lonely())
    assert not res.consistent and res.empty_var == 0


def test_dense_product():
    assert dense_product([[1, 0], [0, 1]], [[0, 1], [1, 0]]) == [[0, 1], [1, 0]]


def test_bounded_diff_reproduces_cyclone():
    fixture = cyclone_instance(include_c20=False)
    a, b, c = fixture.domains
    rebuilt = CspInstance(
        [a, b, c],
        [
            difference_constraint(0, 1, a, b, -3, 1),
            difference_constraint(1, 2, b, c, -2, 2),
            difference_constraint(2, 0, c, a, -2, 3),
        ],
        names=["A", "B", "C"],
    )
    assert rebuilt == fixture


@pytest.mark.parametrize("kind", list(Kind))
@pytest.mark.parametrize("topology", [Topology.CHAIN, Topology.CYCLE, Topology.RANDOM])
def test_generator_contract(kind, topology):
    for seed in range(20):
        spec = GenSpec(kind, n=5, d=6, density=0.4, seed=seed, topology=topology, c=4)
        inst = generate(spec)
        assert serialize(inst) == serialize(generate(spec))
        for con in inst.constraints:
            assert is_us(con) if kind is Kind.RANDOM_US else is_ds(con)
        if topology is Topology.CHAIN:
            assert inst.c == 4
        elif topology is Topology.CYCLE:
            assert inst.c == 5


def test_different_seeds_differ():
    a = generate(GenSpec(Kind.RANDOM_DS, 4, 6, seed=1))
    b = generate(GenSpec(Kind.RANDOM_DS, 4, 6, seed=2))
    assert serialize(a) != serialize(b)


@pytest.mark.parametrize(
    "spec",
    [
        GenSpec(Kind.RANDOM_DS, 0, 5),
        GenSpec(Kind.RANDOM_DS, 3, 0),
        GenSpec(Kind.RANDOM_DS, 3, 5, density=1.5),
        GenSpec(Kind.RANDOM_DS, 3, 5, topology=Topology.RANDOM, c=9),
        GenSpec(Kind.RANDOM_DS, 3, 5, topology=Topology.RANDOM),
        GenSpec("ds", 3, 5),
    ],
)
def test_invalid_specs(spec):
    with pytest.raises(InvalidSpec):
        generate(spec)


def test_families():
    chain = diff_chain(5, 12)
    assert chain.n == 5 and chain.c == 4 and all(is_ds(c) for c in chain.constraints)
    assert brute_force_solutions(infeasible_chain(4, 9)) == []
    planted = planted_chain(4, 20, 3, seed=2)
    mins = min_solution_members(planted)
    assert all(planted.domains[i].index(v) <= 3 for i, v in enumerate(mins))
    with pytest.raises(InvalidSpec):
        planted_chain(3, 5, 5)
    with pytest.raises(InvalidSpec):
        infeasible_chain(1, 5)
