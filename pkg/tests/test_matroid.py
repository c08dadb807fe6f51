import itertools

import pytest

from supersec import ConfigError, DomainError, ExplicitMatroid, Graphic, Partition, Restricted, Truncated, Uniform
from supersec.matroid import WithDummies, matroid_from_dict

from .conftest import random_instance, subsets

TRIANGLE = Graphic(3, [(0, 1), (1, 2), (0, 2)])


def all_masks(M):
    return [m for m in range(1 << M.n) if M.indep_mask(m)]


def check_axioms(M):
    fam = set(all_masks(M))
    assert 0 in fam
    for m in fam:
        for u in range(M.n):
            if m >> u & 1:
                assert m & ~(1 << u) in fam
    for big in fam:
        for small in fam:
            if big.bit_count() > small.bit_count():
                assert any(small | 1 << u in fam for u in range(M.n) if big >> u & 1 and not small >> u & 1)
    assert M.rank() == max(m.bit_count() for m in fam)


def test_independence_examples():
    assert not Uniform(3, 2).is_independent({0, 1, 2})
    assert not TRIANGLE.is_independent({0, 1, 2})
    assert TRIANGLE.is_independent({0, 2})
    for M in (Uniform(3, 0), TRIANGLE, Partition(2, [[0], [1]], [0, 0])):
        assert M.is_independent(())
    with pytest.raises(DomainError):
        Uniform(3, 2).is_independent({3})


def test_rank_examples():
    assert Uniform(5, 3).rank() == 3
    assert Uniform(2, 5).rank() == 2
    tree = Graphic(4, [(0, 1), (1, 2), (1, 3)])
    assert tree.rank() == 3
    assert Truncated(Uniform(5, 5), 2).rank() == 2
    assert Partition(5, [[0, 1], [2, 3, 4]], [1, 5]).rank() == 4
    # two components plus an isolated vertex
    assert Graphic(5, [(0, 1), (0, 1), (2, 3)]).rank() == 2


def test_truncate_examples():
    M = TRIANGLE
    same = M.truncate(M.rank())
    assert all_masks(same) == all_masks(M)
    assert all_masks(Uniform(5, 5).truncate(2)) == all_masks(Uniform(5, 2))
    t1 = M.truncate(1)
    assert all(t1.is_independent({e}) for e in range(3))
    assert not any(t1.is_independent(p) for p in itertools.combinations(range(3), 2))


def test_restrict_examples():
    M = TRIANGLE
    assert all_masks(M.restrict(range(3))) == all_masks(M)
    assert Uniform(2, 2).restrict({0}).rank() == 1
    r = M.restrict({0, 1})
    assert r.is_independent({0, 1})
    assert not r.is_independent({2})
    assert r.rank() == 2
    assert M.restrict(0b011).allowed == 0b011


def test_axioms_on_generated_matroids():
    for seed in range(30):
        kind = ("uniform", "partition", "graphic")[seed % 3]
        M = random_instance(seed, 2 + seed % 9, 1, kind).matroid
        check_axioms(M)
        k = max(0, M.rank() - 1)
        check_axioms(M.truncate(k))
        allowed = seed * 2654435761 & M.full_mask()
        check_axioms(M.restrict(allowed))
        for m in range(1 << M.n):
            assert M.truncate(k).indep_mask(m) == (M.indep_mask(m) and m.bit_count() <= k)
            assert M.restrict(allowed).indep_mask(m) == (M.indep_mask(m) and m & ~allowed == 0)


def test_with_dummies():
    M = WithDummies(TRIANGLE, 2)
    assert M.n == 5 and M.rank() == 4
    assert M.is_independent({0, 1, 3, 4})
    assert not M.is_independent({0, 1, 2, 3})
    check_axioms(Truncated(M, 2))


def test_explicit_validation():
    E = ExplicitMatroid.from_matroid(TRIANGLE)
    assert E.rank() == 2
    assert all_masks(E) == all_masks(TRIANGLE)
    with pytest.raises(ConfigError):
        ExplicitMatroid(2, [[0]])
    with pytest.raises(ConfigError):
        ExplicitMatroid(2, [[], [0, 1]])
    with pytest.raises(ConfigError):
        # {0,1} and {2}: {2} cannot be augmented from {0,1}
        ExplicitMatroid(3, [[], [0], [1], [2], [0, 1]])


def test_constructor_errors():
    with pytest.raises(ConfigError):
        Partition(3, [[0, 1], [1, 2]], [1, 1])
    with pytest.raises(ConfigError):
        Partition(3, [[0, 1]], [1])
    with pytest.raises(ConfigError):
        Graphic(2, [(0, 2)])
    with pytest.raises(ConfigError):
        Uniform(0, 1)


def test_dict_round_trip():
    cases = [
        Uniform(4, 2),
        Partition(4, [[0, 2], [1, 3]], [1, 2]),
        Graphic(3, [(0, 1), (1, 2), (0, 2), (0, 1)]),
        Truncated(Uniform(4, 3), 2),
        Restricted(Uniform(4, 3), {1, 2}),
        ExplicitMatroid.from_matroid(Uniform(3, 1)),
    ]
    for M in cases:
        again = matroid_from_dict(M.to_dict(), M.n)
        assert all_masks(again) == all_masks(M)
    with pytest.raises(ConfigError):
        matroid_from_dict({"kind": "nope"}, 3)
    with pytest.raises(ConfigError):
        matroid_from_dict({"kind": "uniform"}, 3)
    with pytest.raises(ConfigError):
        matroid_from_dict(TRIANGLE.to_dict(), 4)
