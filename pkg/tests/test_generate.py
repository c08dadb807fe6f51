import numpy as np
import pytest

from supersec import ConfigError, Graphic, Partition, Uniform
from supersec.harness.generate import GeneratorSpec, generate_instance


def gen(seed=0, **kw):
    return generate_instance(GeneratorSpec(**kw), np.random.default_rng(seed))


def test_degree_zero_is_linear():
    inst = gen(n=8, d=0)
    assert inst.valuation.bonuses == ()
    assert all(inst.valuation.dep_set(u) == frozenset() for u in range(8))


def test_degree_one_pairs():
    for seed in range(30):
        f = gen(seed, n=6, d=1).valuation
        assert all(len(m) == 2 for m, _ in f.bonuses)
        assert f.supermodular_degree() <= 1
        members = [u for m, _ in f.bonuses for u in m]
        assert len(members) == len(set(members))


def test_degree_cap_respected():
    for seed in range(40):
        d = seed % 4
        inst = gen(seed, n=10, d=d, bonus_attempts=40)
        assert inst.valuation.supermodular_degree() <= d
        assert inst.valuation.offset == 0
        assert all(1 <= v <= 10 for _, v in inst.valuation.bonuses)
        assert all(0 <= w <= 10 and w == int(w) for w in inst.valuation.weights)


def test_degree_target_is_reached_often():
    reached = sum(gen(seed, n=10, d=2, bonus_attempts=30).valuation.supermodular_degree() == 2 for seed in range(20))
    assert reached >= 15


def test_seed_determinism():
    a = gen(7, n=9, d=2, matroid={"kind": "graphic", "vertices": 5}).dumps()
    b = gen(7, n=9, d=2, matroid={"kind": "graphic", "vertices": 5}).dumps()
    assert a == b
    assert a != gen(8, n=9, d=2, matroid={"kind": "graphic", "vertices": 5}).dumps()


def test_matroid_kinds():
    assert isinstance(gen(n=5, d=1, matroid={"kind": "uniform", "k": 3}).matroid, Uniform)
    part = gen(n=7, d=1, matroid={"kind": "partition", "blocks": 3, "capacity": 1}).matroid
    assert isinstance(part, Partition) and part.rank() == 3
    graph = gen(n=12, d=1, matroid={"kind": "graphic", "vertices": 4}).matroid
    assert isinstance(graph, Graphic)
    assert all(a != b for a, b in graph.edges)


def test_infeasible_specs():
    with pytest.raises(ConfigError):
        gen(n=3, d=3)
    with pytest.raises(ConfigError):
        gen(n=3, d=1, weight_range=(5, 1))
    with pytest.raises(ConfigError):
        gen(n=3, d=1, matroid={"kind": "partition", "blocks": 9, "capacity": 1})
    with pytest.raises(ConfigError):
        gen(n=3, d=1, matroid={"kind": "uniform"})
    with pytest.raises(ConfigError):
        GeneratorSpec.from_dict({"n": 3})


def test_spec_dict_round_trip():
    spec = GeneratorSpec(n=5, d=2, matroid={"kind": "uniform", "k": 2}, weight_range=(1, 3))
    assert GeneratorSpec.from_dict(spec.to_dict()) == spec
