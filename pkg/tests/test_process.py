import math

import numpy as np
import pytest

from supersec import ConfigError, ContractFault
from supersec.harness.process import ProcessConfig, default_t_grid, simulate_process, tail_bound


def test_all_accepted():
    res = simulate_process(ProcessConfig(1.0, 2.0, 9.0, "adaptive"), np.random.default_rng(0), 500)
    assert np.all(res.accepted_sums >= 9.0)
    assert all(row["frequency"] == 0 for row in res.tail)


def test_none_accepted():
    res = simulate_process(ProcessConfig(0.0, 2.0, 9.0, "halving"), np.random.default_rng(0), 500)
    assert np.all(res.accepted_sums == 0)


def test_const_round_count():
    res = simulate_process(ProcessConfig(0.5, 3.0, 10.0, "const"), np.random.default_rng(0), 100)
    assert np.all(res.rounds == math.ceil(10 / 3))
    res0 = simulate_process(ProcessConfig(0.5, 3.0, 0.0, "const"), np.random.default_rng(0), 10)
    assert np.all(res0.rounds == 1)


def test_const_schedule_against_bound():
    cfg = ProcessConfig(1 / 3, 1.0, 30.0, "const")
    res = simulate_process(cfg, np.random.default_rng(1), 20_000)
    for row in res.tail:
        assert row["bound"] == tail_bound(cfg.p, cfg.B, cfg.L, row["t"])
        assert row["frequency"] <= row["bound"] + 3 * row["std_error"]


def test_halving_values_are_powers():
    seen = []

    def spy(i, prev, B, size):
        x = np.full(size, B / 2 ** (i % 4))
        seen.append(x[0])
        return x

    simulate_process(ProcessConfig(0.5, 4.0, 20.0, "halving"), np.random.default_rng(0), 5, schedule=spy)
    assert set(seen) <= {4.0, 2.0, 1.0, 0.5}


def test_contract_faults():
    cfg = ProcessConfig(0.5, 1.0, 5.0)
    with pytest.raises(ContractFault):
        simulate_process(cfg, np.random.default_rng(0), 10, schedule=lambda i, prev, B, n: np.full(n, 2.0))
    with pytest.raises(ContractFault):
        simulate_process(cfg, np.random.default_rng(0), 10, schedule=lambda i, prev, B, n: np.zeros(n))
    with pytest.raises(ContractFault):
        simulate_process(ProcessConfig(0.5, 1.0, 5.0, max_rounds=2), np.random.default_rng(0), 10)


def test_config_errors():
    for bad in (ProcessConfig(1.5, 1, 1), ProcessConfig(0.5, 0, 1), ProcessConfig(0.5, 1, -1), ProcessConfig(0.5, 1, 1, "wild")):
        with pytest.raises(ConfigError):
            simulate_process(bad, np.random.default_rng(0), 10)
    with pytest.raises(ConfigError):
        simulate_process(ProcessConfig(0.5, 1, 1), np.random.default_rng(0), 0)


def test_default_grid():
    assert default_t_grid(ProcessConfig(0.5, 1, 20)) == [1.0, 2.0, 3.0, 4.0, 5.0]
    assert default_t_grid(ProcessConfig(0.0, 1, 20)) == [1.0, 2.0, 3.0, 4.0, 5.0]
